#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bohrnet/bohr.hpp"

namespace bohrnet {

inline constexpr const char* kToolName = "bohrnet";
inline constexpr const char* kToolVersion = "0.1.0";

// Flag values given on the command line or by environment; they override the
// spec file's flags object.
struct FlagOverrides {
  std::optional<bool> no_trivial_context;
  std::optional<long long> cover_cap;
  std::optional<long long> section_cap;
  std::optional<int> threads;
};

NetSpec parse_net_spec(const nlohmann::json& j);
NetSpec load_net_spec(const std::string& path, const FlagOverrides& overrides);

struct KsDataset {
  int dimension = 0;
  std::vector<GeneratorDecl> projections;
  std::uint64_t section_cap = 1000000;
};
KsDataset parse_ks_dataset(const nlohmann::json& j);

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);
nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j);
nlohmann::json region_to_json(const Region& r);

struct RunOutcome {
  nlohmann::json file;   // { "report": ..., "report_digest": ..., "timing": ... }
  int exit_code = 0;
  std::string summary;   // human-readable lines for stdout
};

// Full pipeline behind `check`: loads the spec, runs every axiom checker and
// the descent checker, and assembles the deterministic report. The timing
// object stays outside the digest-covered section.
RunOutcome run_check(const std::string& spec_path, const FlagOverrides& overrides);

// Pipeline behind `ks`.
RunOutcome run_ks(const std::string& dataset_path, const FlagOverrides& overrides);

// Pipeline behind `explain`: a deterministic, human-readable trace of one
// cover's comparison map, adjoint table and adjunction matrix.
std::string run_explain(const std::string& spec_path, const std::string& cover_text,
                        const FlagOverrides& overrides);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bohrnet
