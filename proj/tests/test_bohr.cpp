#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "bohrnet/bohr.hpp"
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

GeneratorDecl pauli_decl(const std::string& label, const Mat& m) {
  return GeneratorDecl{label, m, {Scalar(1), Scalar(-1)}};
}

struct Pipeline {
  Net net;
  BohrifiedNet bnet;
  SliceNet snet;
  SliceSystem sys;

  explicit Pipeline(const NetSpec& spec, ContextOptions opt = {})
      : net(spec), bnet(net, opt), snet(net), sys(snet, opt) {}
};

}  // namespace

TEST_CASE("bohrify: trivial algebra, M2, diagonal") {
  auto one = bohrify(AlgebraSpan::trivial(2), {});
  CHECK(one.poset.size() == 1);
  CHECK(one.ring().functorial());

  auto m2 = bohrify(AlgebraSpan::generate(2, {pauli_x(), pauli_z()}),
                    {pauli_decl("sx", pauli_x()), pauli_decl("sz", pauli_z())});
  CHECK(m2.poset.size() == 3);
  CHECK(m2.ring().functorial());

  auto diag = bohrify(AlgebraSpan::generate(2, {pauli_z()}), {pauli_decl("sz", pauli_z())});
  CHECK(diag.poset.size() == 2);  // a two-point chain
  CHECK(diag.poset.leq(diag.poset.bottom(), 1 - diag.poset.bottom()));
}

TEST_CASE("bohrified net: contravariant functoriality and structure maps") {
  Pipeline p(load_spec("spin_chain_n2.json"));
  CHECK(p.bnet.functorial());
  CHECK(p.bnet.ring_morphisms_ok());

  const auto& rp = p.net.regions();
  Region site0 = diamond_of_interval(0, 0, p.net.spec().window());
  const int small = rp.index_of(site0);
  const int large = rp.full_index();
  REQUIRE(small >= 0);
  REQUIRE(p.net.regions().leq(small, large));

  // The structure map sends <z0, z1> to <z0>.
  Mat z0 = Mat::kron(pauli_z(), Mat::identity(2));
  Mat z1 = Mat::kron(Mat::identity(2), pauli_z());
  const auto& map = p.bnet.structure_map(small, large);
  int joint = p.bnet.at(large).index_of(AlgebraSpan::generate(4, {z0, z1}));
  REQUIRE(joint >= 0);
  CHECK(p.bnet.at(small).context(map[static_cast<size_t>(joint)]).span ==
        AlgebraSpan::generate(4, {z0}));
}

TEST_CASE("bohrified net of a single-region window is constant") {
  NetSpec spec = load_spec("constant_commutative.json");
  spec.slice_hi = spec.slice_lo;  // one-point window
  spec.sites.resize(1);
  Net net(spec);
  BohrifiedNet bnet(net, {});
  const auto& rp = net.regions();
  REQUIRE(rp.size() == 2);  // empty + the point
  CHECK(bnet.at(rp.full_index()).size() == 2);
  CHECK(bnet.at(rp.empty_index()).size() == 1);
}

TEST_CASE("comparison map on the spin pair: frozen values") {
  Pipeline p(load_spec("spin_chain_n2.json"));
  SliceOpen u = SliceOpen::interval(0, 0), v = SliceOpen::interval(1, 1);
  p.sys.prepare({{u, v}});
  auto pc = run_piece_check(p.sys, u.unite(v), {u, v});
  CHECK(pc.f_well_defined);

  const auto& pw = p.sys.poset(u.unite(v));
  const auto& pu = p.sys.poset(u);
  const auto& pv = p.sys.poset(v);
  CHECK(pw.size() == 9);  // 3 x 3 per-site choices
  CHECK(pu.size() == 3);
  CHECK(pv.size() == 3);
  CHECK(pc.pullback.elems.size() == 9);  // disjoint cover: the full product

  Mat z0 = Mat::kron(pauli_z(), Mat::identity(2));
  Mat z1 = Mat::kron(Mat::identity(2), pauli_z());
  Mat x1 = Mat::kron(Mat::identity(2), pauli_x());

  // Bottom to bottom.
  CHECK(pc.f_tuples[static_cast<size_t>(pw.bottom())] ==
        std::vector<int>{pu.bottom(), pv.bottom()});

  // f(<z0, z1>) = (<z0>, <z1>).
  int joint = pw.index_of(AlgebraSpan::generate(4, {z0, z1}));
  REQUIRE(joint >= 0);
  CHECK(pu.context(pc.f_tuples[static_cast<size_t>(joint)][0]).span ==
        AlgebraSpan::generate(4, {z0}));
  CHECK(pv.context(pc.f_tuples[static_cast<size_t>(joint)][1]).span ==
        AlgebraSpan::generate(4, {z1}));

  // L(<z0>, <x1>) = <z0, x1> and the adjunction law holds exhaustively.
  REQUIRE(pc.adj.exists);
  CHECK(pc.adj.law_holds);
  CHECK(pc.adj.monotone);
  std::vector<int> x = {pu.index_of(AlgebraSpan::generate(4, {z0})),
                        pv.index_of(AlgebraSpan::generate(4, {x1}))};
  int xi = pc.pullback.index_of(x);
  REQUIRE(xi >= 0);
  CHECK(pw.context(pc.adj.L[static_cast<size_t>(xi)]).span ==
        AlgebraSpan::generate(4, {z0, x1}));
  CHECK(pc.fully_faithful);
}

TEST_CASE("derived generator context maps to the bottom pair") {
  NetSpec spec = load_spec("spin_chain_n2.json");
  DerivedGenDecl dg;
  dg.sites = {0, 1};
  dg.gen.label = "zz";
  dg.gen.matrix = Mat::kron(pauli_z(), pauli_z());
  dg.gen.spectrum = {Scalar(1), Scalar(-1)};
  spec.derived.push_back(dg);
  Pipeline p(spec);
  SliceOpen u = SliceOpen::interval(0, 0), v = SliceOpen::interval(1, 1);
  p.sys.prepare({{u, v}});
  auto pc = run_piece_check(p.sys, u.unite(v), {u, v});
  const auto& pw = p.sys.poset(u.unite(v));
  Mat zz = Mat::kron(pauli_z(), pauli_z());
  int c = pw.index_of(AlgebraSpan::generate(4, {zz}));
  REQUIRE(c >= 0);
  CHECK(pc.f_tuples[static_cast<size_t>(c)] ==
        std::vector<int>{p.sys.poset(u).bottom(), p.sys.poset(v).bottom()});
  // The cover is still local: <zz> embeds below <z0,z1>.
  CHECK(pc.local());
}

TEST_CASE("global qubit: no left adjoint, with the expected witness") {
  Pipeline p(load_spec("global_qubit.json"));
  SliceOpen u = SliceOpen::interval(0, 0), v = SliceOpen::interval(1, 1);
  p.sys.prepare({{u, v}});
  auto rep = check_cover(p.sys, u, v);
  CHECK_FALSE(rep.direct.adj.exists);
  REQUIRE(rep.direct.adj.witness.has_value());
  CHECK_FALSE(rep.local());
  CHECK_FALSE(rep.strong_identities_hold);
  // The witness pair consists of two incompatible one-generator contexts.
  const auto& x = rep.direct.pullback.elems[static_cast<size_t>(*rep.direct.adj.witness)];
  const auto& c1 = p.sys.poset(u).context(x[0]).span;
  const auto& c2 = p.sys.poset(v).context(x[1]).span;
  CHECK(c1.dim() == 2);
  CHECK(c2.dim() == 2);
  CHECK_FALSE(join(c1, c2).is_commutative());
}

TEST_CASE("constant commutative: adjoint exists but is not fully faithful") {
  Pipeline p(load_spec("constant_commutative.json"));
  SliceOpen u = SliceOpen::interval(0, 0), v = SliceOpen::interval(1, 1);
  p.sys.prepare({{u, v}});
  auto rep = check_cover(p.sys, u, v);
  CHECK(rep.direct.adj.exists);
  CHECK(rep.direct.adj.law_holds);
  CHECK_FALSE(rep.direct.fully_faithful);
  REQUIRE(rep.direct.ff_witness.has_value());
  CHECK_FALSE(rep.local());
  CHECK_FALSE(rep.strong_identities_hold);
  // Witness: the asymmetric pair (<I>, D) with f(L(x)) = (D, D).
  const auto& x =
      rep.direct.pullback.elems[static_cast<size_t>(*rep.direct.ff_witness)];
  const auto& c1 = p.sys.poset(u).context(x[0]).span;
  const auto& c2 = p.sys.poset(v).context(x[1]).span;
  CHECK(c1.dim() != c2.dim());
}

TEST_CASE("one-element pullback poset is trivially fully faithful") {
  NetSpec spec = load_spec("constant_commutative.json");
  spec.slice_hi = spec.slice_lo;
  spec.sites.resize(1);
  Pipeline p(spec);
  SliceOpen u = SliceOpen::interval(spec.slice_lo, spec.slice_lo);
  p.sys.prepare({{u, u}});
  auto pc = run_piece_check(p.sys, u, {u, u});
  CHECK(pc.pullback.elems.size() == p.sys.poset(u).size());  // the diagonal
  CHECK(pc.adj.exists);
  CHECK(pc.fully_faithful);
}

TEST_CASE("theorem check: spin chain N=2 consistent and local everywhere") {
  Pipeline p(load_spec("spin_chain_n2.json"));
  auto rep = theorem_check(p.net, p.bnet, p.sys);
  CHECK(rep.applicable);
  CHECK(rep.strong.pass());
  CHECK(rep.descent_all_local);
  REQUIRE(rep.consistent.has_value());
  CHECK(*rep.consistent);
  for (const auto& d : rep.descent) {
    CHECK(d.direct.f_well_defined);
    if (d.direct.adj.exists) CHECK(d.direct.adj.law_holds);
    CHECK(d.adjoint_is_join);
    if (d.overlapping) CHECK(d.three_piece_agrees);
    // Strong identities match full faithfulness cover by cover.
    CHECK(d.strong_identities_hold ==
          (d.direct.adj.exists && d.direct.fully_faithful));
  }
}

TEST_CASE("theorem check: constant net fails strong locality and descent consistently") {
  Pipeline p(load_spec("constant_commutative.json"));
  auto rep = theorem_check(p.net, p.bnet, p.sys);
  CHECK(rep.applicable);
  CHECK_FALSE(rep.strong.pass());
  REQUIRE(rep.strong.witness.has_value());
  CHECK_FALSE(rep.descent_all_local);
  REQUIRE(rep.consistent.has_value());
  CHECK(*rep.consistent);
}

TEST_CASE("theorem check: global qubit is not even causally local; still consistent") {
  Pipeline p(load_spec("global_qubit.json"));
  auto rep = theorem_check(p.net, p.bnet, p.sys);
  CHECK(rep.applicable);
  CHECK_FALSE(rep.locality.pass);
  CHECK_FALSE(rep.strong.pass());
  CHECK_FALSE(rep.descent_all_local);
  CHECK(*rep.consistent);
}

TEST_CASE("theorem check: non-additive net reports not applicable") {
  Pipeline p(load_spec("custom_nonadditive.json"));
  auto rep = theorem_check(p.net, p.bnet, p.sys);
  CHECK_FALSE(rep.applicable);
  CHECK_FALSE(rep.consistent.has_value());
}

TEST_CASE("strong locality witness for the constant net is the expected triple") {
  Pipeline p(load_spec("constant_commutative.json"));
  auto v = check_strong_locality(p.net, p.bnet.posets());
  CHECK(v.locality.pass);
  CHECK_FALSE(v.intersections_ok);
  REQUIRE(v.witness.has_value());
  // (C1 v C2) n A(O1) lands on the full diagonal instead of C1.
  CHECK(v.witness->lhs.dim() == 2);
  CHECK(v.witness->c1.dim() == 1);
}

TEST_CASE("cover enumeration respects the two-interval shape and the cap") {
  Window w(0, 3);
  auto covers = enumerate_covers(w, 100000);
  for (const auto& [u, v] : covers) {
    CHECK(u.component_count() <= 2);
    CHECK(v.component_count() <= 2);
    CHECK(u.unite(v).component_count() <= 2);
    CHECK_FALSE(u.empty());
    CHECK_FALSE(v.empty());
  }
  CHECK_THROWS_AS(enumerate_covers(w, 3), CapExceeded);

  Window w2(0, 1);
  auto c2 = enumerate_covers(w2, 1000);
  CHECK(c2.size() == 9);  // three nonempty opens, all pairs qualify
}

TEST_CASE("descent over threads is deterministic") {
  NetSpec spec = load_spec("spin_chain_n2.json");
  Pipeline p1(spec);
  auto covers = enumerate_covers(spec.window(), 1000);
  p1.sys.prepare(covers);
  auto seq = check_descent_local(p1.sys, covers, 1);

  Pipeline p2(spec);
  p2.sys.prepare(covers);
  auto par = check_descent_local(p2.sys, covers, 4);
  REQUIRE(seq.size() == par.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].local() == par[i].local());
    CHECK(seq[i].direct.pullback.elems == par[i].direct.pullback.elems);
    CHECK(seq[i].direct.f_elem == par[i].direct.f_elem);
  }
}

TEST_CASE("include_trivial_context flag keeps spin chain verdicts unchanged") {
  NetSpec spec = load_spec("spin_chain_n2.json");
  Pipeline with(spec);
  auto rep1 = theorem_check(with.net, with.bnet, with.sys);

  ContextOptions no_triv;
  no_triv.include_trivial = false;
  Pipeline without(spec, no_triv);
  auto rep2 = theorem_check(without.net, without.bnet, without.sys);

  CHECK(rep1.strong.pass() == rep2.strong.pass());
  CHECK(rep1.descent_all_local == rep2.descent_all_local);
  CHECK(*rep1.consistent == *rep2.consistent);
}
