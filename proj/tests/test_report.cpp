#include <doctest.h>

#include <cstdio>

#include "bohrnet/errors.hpp"
#include "bohrnet/report.hpp"

using namespace bohrnet;

namespace {

std::string data_path(const std::string& name) {
  return std::string(BOHRNET_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("scalar json round trip and validation") {
  CHECK(scalar_from_json("1/2") == Scalar(Rat(1, 2)));
  CHECK(scalar_from_json(nlohmann::json::array({"0", "1"})) == Scalar::unit_im());
  CHECK(scalar_from_json(3) == Scalar(3));
  CHECK_THROWS_AS(scalar_from_json(nlohmann::json(0.5)), SpecError);
  CHECK_THROWS_AS(scalar_from_json("1/0"), SpecError);
  Scalar s(Rat(-7, 3), Rat(2, 5));
  CHECK(scalar_from_json(scalar_to_json(s)) == s);
}

TEST_CASE("net spec parsing failures carry diagnostics") {
  CHECK_THROWS_AS(load_net_spec(data_path("no_such_file.json"), {}), SpecError);

  const std::string tmp = "/tmp/bohrnet_truncated.json";
  write_file(tmp, "{\"family\": \"spin_chain\", ");
  CHECK_THROWS_WITH_AS(load_net_spec(tmp, {}),
                       doctest::Contains("malformed JSON"), SpecError);
  std::remove(tmp.c_str());

  nlohmann::json j;
  j["family"] = "nope";
  CHECK_THROWS_AS(parse_net_spec(j), SpecError);

  nlohmann::json ok = {
      {"family", "spin_chain"},
      {"window", {{"slice_length", 1}}},
      {"sites", nlohmann::json::array({{{"label", "s0"}, {"dim", 2}}})}};
  CHECK_NOTHROW(parse_net_spec(ok));
  nlohmann::json both = ok;
  both["window"]["slice_radius"] = 1;
  CHECK_THROWS_AS(parse_net_spec(both), SpecError);
}

TEST_CASE("slice_radius windows center the slice") {
  nlohmann::json j = {
      {"family", "constant_commutative"},
      {"window", {{"slice_radius", 1}}},
      {"sites",
       nlohmann::json::array(
           {{{"label", "g"},
             {"dim", 2},
             {"generators",
              nlohmann::json::array(
                  {{{"label", "sz"},
                    {"entries", nlohmann::json::parse("[[\"1\",\"0\"],[\"0\",\"-1\"]]")},
                    {"spectrum", nlohmann::json::array({"1", "-1"})}}})}}})}};
  NetSpec spec = parse_net_spec(j);
  CHECK(spec.slice_lo == -1);
  CHECK(spec.slice_hi == 1);
}

TEST_CASE("run_check: exit codes and digest-stable reports") {
  auto out1 = run_check(data_path("constant_commutative.json"), {});
  CHECK(out1.exit_code == 0);  // theorem consistent even though checks fail
  CHECK(out1.file.contains("report"));
  CHECK(out1.file.contains("report_digest"));
  CHECK(out1.file.contains("timing"));

  auto out2 = run_check(data_path("constant_commutative.json"), {});
  // Byte-identical digest-covered section; timing may differ.
  CHECK(out1.file["report"].dump() == out2.file["report"].dump());
  CHECK(out1.file["report_digest"] == out2.file["report_digest"]);

  FlagOverrides threaded;
  threaded.threads = 4;
  auto out3 = run_check(data_path("constant_commutative.json"), threaded);
  CHECK(out1.file["report"].dump() == out3.file["report"].dump());
}

TEST_CASE("run_check: summary verdict lines for the shipped nets") {
  auto chain = run_check(data_path("spin_chain_n2.json"), {});
  CHECK(chain.exit_code == 0);
  CHECK(chain.file["report"]["theorem"]["consistent"] == true);
  CHECK(chain.file["report"]["theorem"]["strongly_local"] == true);
  CHECK(chain.file["report"]["descent"]["all_local"] == true);

  auto shared = run_check(data_path("global_qubit.json"), {});
  CHECK(shared.exit_code == 0);
  CHECK(shared.file["report"]["theorem"]["strongly_local"] == false);
  CHECK(shared.file["report"]["descent"]["all_local"] == false);
  CHECK(shared.file["report"]["checks"]["causal_locality"]["pass"] == false);
  CHECK(shared.file["report"]["checks"]["causal_locality"]["witness"].is_object());

  auto custom = run_check(data_path("custom_nonadditive.json"), {});
  CHECK(custom.exit_code == 0);
  CHECK(custom.file["report"]["theorem"]["applicable"] == false);
  CHECK(custom.file["report"]["theorem"]["consistent"].is_null());
  CHECK(custom.file["report"]["checks"]["additivity"]["pass"] == false);
}

TEST_CASE("run_check honors the cover cap with a distinct diagnostic") {
  FlagOverrides o;
  o.cover_cap = 2;
  CHECK_THROWS_AS(run_check(data_path("spin_chain_n2.json"), o), CapExceeded);
}

TEST_CASE("run_ks on the shipped datasets") {
  auto cab = run_ks(data_path("cabello18.json"), {});
  CHECK(cab.exit_code == 0);
  CHECK(cab.file["report"]["global_sections"]["count"] == 0);
  CHECK(cab.file["report"]["global_sections"]["exact"] == true);
  CHECK(cab.file["report"]["verdict"] == "contextual");

  auto single = run_ks(data_path("single_basis_d4.json"), {});
  CHECK(single.file["report"]["global_sections"]["count"] == 4);
  CHECK(single.file["report"]["verdict"] == "non-contextual");

  const std::string tmp = "/tmp/bohrnet_empty_ks.json";
  write_file(tmp, "{\"dimension\": 3, \"projections\": []}");
  auto empty = run_ks(tmp, {});
  CHECK(empty.file["report"]["global_sections"]["count"] == 1);
  std::remove(tmp.c_str());
}

TEST_CASE("run_explain: all tables for a local cover, failing x for a bad one") {
  auto text = run_explain(data_path("spin_chain_n2.json"), "0;1", {});
  CHECK(text.find("comparison map") != std::string::npos);
  CHECK(text.find("left adjoint") != std::string::npos);
  CHECK(text.find("adjunction matrix") != std::string::npos);
  CHECK(text.find("local geometric morphism") != std::string::npos);
  // Deterministic output.
  CHECK(run_explain(data_path("spin_chain_n2.json"), "0;1", {}) == text);

  auto bad = run_explain(data_path("constant_commutative.json"), "0;1", {});
  CHECK(bad.find("differs") != std::string::npos);
  CHECK(bad.find("not a local geometric morphism") != std::string::npos);

  CHECK_THROWS_AS(run_explain(data_path("spin_chain_n2.json"), "empty;empty", {}),
                  SpecError);
  CHECK_THROWS_AS(run_explain(data_path("spin_chain_n2.json"), "0;7", {}), SpecError);
  CHECK_THROWS_AS(run_explain(data_path("spin_chain_n2.json"), "nocover", {}), SpecError);
}
