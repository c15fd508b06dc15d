#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "bohrnet/net.hpp"
#include "bohrnet/report.hpp"
#include "oracles.hpp"

using namespace bohrnet;

namespace {

NetSpec load_spec(const std::string& name) {
  std::ifstream in(std::string(BOHRNET_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return parse_net_spec(j);
}

}  // namespace

TEST_CASE("embed_on_sites places factors correctly") {
  std::vector<int> all = {0, 1, 2};
  std::vector<int> dims = {2, 2, 2};
  Mat z1 = embed_on_sites(pauli_z(), {1}, all, dims);
  CHECK(z1 == Mat::kron(Mat::kron(Mat::identity(2), pauli_z()), Mat::identity(2)));
  Mat xx02 = embed_on_sites(Mat::kron(pauli_x(), pauli_x()), {0, 2}, all, dims);
  CHECK(xx02 == Mat::kron(Mat::kron(pauli_x(), Mat::identity(2)), pauli_x()));
}

TEST_CASE("spin chain N=2: evaluation, empty region, site factor") {
  Net net(load_spec("spin_chain_n2.json"));
  CHECK(net.ambient_dim() == 4);
  const auto& rp = net.regions();

  CHECK(net.at(rp.empty_index()).is_trivial());

  Region site0 = diamond_of_interval(0, 0, net.spec().window());
  AlgebraSpan a0 = net.evaluate(site0);
  CHECK(a0.dim() == 4);  // M2 (x) I
  CHECK(a0.contains(Mat::kron(pauli_x(), Mat::identity(2))));
  CHECK_FALSE(a0.contains(Mat::kron(Mat::identity(2), pauli_x())));

  // The full window evaluates to the whole M4.
  CHECK(net.at(rp.full_index()).dim() == 16);

  // Direct evaluation agrees with the generic closure oracle.
  auto oracle = oracles::closure_oracle(4, {Mat::kron(pauli_x(), Mat::identity(2)),
                                            Mat::kron(pauli_z(), Mat::identity(2))});
  CHECK(static_cast<int>(oracle.size()) == a0.dim());
  for (const auto& b : oracle) CHECK(a0.contains(b));

  CHECK_THROWS_AS(net.evaluate(Region(std::vector<Point>{Point{5, 5}})),
                  std::invalid_argument);
}

TEST_CASE("constant family evaluates to the fixed algebra on nonempty regions") {
  Net net(load_spec("constant_commutative.json"));
  const auto& rp = net.regions();
  for (size_t i = 0; i < rp.size(); ++i) {
    if (rp.region(static_cast<int>(i)).empty())
      CHECK(net.at(static_cast<int>(i)).is_trivial());
    else
      CHECK(net.at(static_cast<int>(i)).dim() == 2);
  }
}

TEST_CASE("slice net: single site, disconnected join, full slice") {
  Net net(load_spec("spin_chain_n4.json"));
  SliceNet snet(net);
  CHECK(snet.at(SliceOpen::interval(0, 0)).dim() == 4);
  CHECK(snet.at(SliceOpen::parse("0,2")).dim() == 16);  // join of two site factors
  CHECK(snet.at(SliceOpen::interval(0, 3)).dim() == 256);
  CHECK(snet.at(SliceOpen{}).is_trivial());
  // Disconnected joins really are component-wise: no site-1 operator inside.
  AlgebraSpan a02 = snet.at(SliceOpen::parse("0,2"));
  Mat z1 = embed_on_sites(pauli_z(), {1}, {0, 1, 2, 3}, {2, 2, 2, 2});
  CHECK_FALSE(a02.contains(z1));
}

TEST_CASE("isotony holds on every shipped net") {
  for (const char* name : {"spin_chain_n2.json", "constant_commutative.json",
                           "global_qubit.json", "custom_nonadditive.json"}) {
    Net net(load_spec(name));
    auto v = check_isotony(net);
    CHECK(v.pass);
    CHECK(v.pairs_checked > 0);
  }
}

TEST_CASE("causal locality: spin chain passes, global qubit fails with witness") {
  Net chain(load_spec("spin_chain_n2.json"));
  CHECK(check_causal_locality(chain).pass);

  Net shared(load_spec("global_qubit.json"));
  auto v = check_causal_locality(shared);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  CHECK_FALSE(v.witness->a.commutes_with(v.witness->b));

  Net constant(load_spec("constant_commutative.json"));
  CHECK(check_causal_locality(constant).pass);
}

TEST_CASE("additivity: chain and constant pass, custom net fails with dimensions") {
  Net chain(load_spec("spin_chain_n2.json"));
  auto vc = check_additivity(chain);
  CHECK(vc.pass);
  CHECK(vc.pairs_checked > 0);

  Net constant(load_spec("constant_commutative.json"));
  CHECK(check_additivity(constant).pass);

  Net custom(load_spec("custom_nonadditive.json"));
  auto v = check_additivity(custom);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->dim_join < v.witness->dim_region_join);
}

TEST_CASE("einstein causality: chain passes with product dimensions, constant fails") {
  Net chain(load_spec("spin_chain_n2.json"));
  auto v = check_einstein_causality(chain);
  CHECK(v.precondition_ok);
  CHECK(v.pass);

  Net constant(load_spec("constant_commutative.json"));
  auto vc = check_einstein_causality(constant);
  CHECK(vc.precondition_ok);
  CHECK_FALSE(vc.pass);
  REQUIRE(vc.witness.has_value());
  CHECK(vc.witness->dim_join == 2);
  CHECK(vc.witness->dim1 * vc.witness->dim2 == 4);

  Net shared(load_spec("global_qubit.json"));
  auto vs = check_einstein_causality(shared);
  CHECK_FALSE(vs.precondition_ok);
  CHECK_FALSE(vs.pass);
}

TEST_CASE("einstein causality on a spacelike pair with an empty side is trivial") {
  Net chain(load_spec("spin_chain_n2.json"));
  const auto& rp = chain.regions();
  AlgebraSpan empty_side = chain.at(rp.empty_index());
  AlgebraSpan other = chain.at(rp.full_index());
  CHECK(join(empty_side, other).dim() == empty_side.dim() * other.dim());
}

TEST_CASE("slice formulation of locality agrees with the region formulation") {
  for (const char* name : {"spin_chain_n2.json", "constant_commutative.json",
                           "global_qubit.json", "custom_nonadditive.json"}) {
    Net net(load_spec(name));
    SliceNet snet(net);
    const bool region_form = check_causal_locality(net).pass;
    bool slice_form = true;
    auto opens = snet.all_opens();
    const int d = net.ambient_dim();
    for (const auto& u : opens)
      for (const auto& v : opens) {
        if (!u.intersect(v).empty()) continue;
        AlgebraSpan au = snet.at(u), av = snet.at(v);
        for (const auto& ra : au.rows())
          for (const auto& rb : av.rows())
            if (sv_matmul(ra, rb, d) != sv_matmul(rb, ra, d)) slice_form = false;
      }
    CHECK(slice_form == region_form);
  }
}

TEST_CASE("net spec validation errors") {
  NetSpec spec = load_spec("spin_chain_n2.json");
  spec.sites.pop_back();
  CHECK_THROWS_AS(spec.validate(), SpecError);

  NetSpec dup = load_spec("spin_chain_n2.json");
  dup.sites[0].gens[1].label = "sx";
  CHECK_THROWS_AS(dup.validate(), SpecError);

  NetSpec bad_derived = load_spec("custom_nonadditive.json");
  bad_derived.derived[0].sites = {0, 5};
  CHECK_THROWS_AS(bad_derived.validate(), SpecError);
}
