#include <iostream>

#include <CLI11.hpp>

#include "bohrnet/report.hpp"

namespace {

// Exit codes: 0 all checks pass or the theorem biconditional is consistent,
// 1 inconsistency, 2 input/configuration error.
constexpr int kExitInputError = 2;

struct CommonFlags {
  std::string json_out;
  long long cover_cap = -1;
  long long section_cap = -1;
  int threads = -1;
  bool no_trivial = false;
};

bohrnet::FlagOverrides to_overrides(CLI::App* cmd, const CommonFlags& f) {
  bohrnet::FlagOverrides o;
  auto given = [cmd](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--cover-cap")) o.cover_cap = f.cover_cap;
  if (given("--section-cap")) o.section_cap = f.section_cap;
  if (given("--threads")) o.threads = f.threads;
  if (given("--no-trivial-context")) o.no_trivial_context = true;
  return o;
}

void emit(const bohrnet::RunOutcome& out, const std::string& json_out) {
  std::cout << out.summary;
  if (!json_out.empty()) {
    bohrnet::write_file(json_out, out.file.dump(2) + "\n");
    std::cout << "report written to " << json_out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checker for locality and descent of finite observable nets"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string spec_path, dataset_path, cover;

  auto add_common = [&](CLI::App* cmd, bool with_section_cap) {
    cmd->add_option("--json-out", flags.json_out, "write the JSON report to this path")
        ->envname("BOHRNET_JSON_OUT");
    cmd->add_option("--cover-cap", flags.cover_cap, "bound on enumerated covers")
        ->envname("BOHRNET_COVER_CAP");
    if (with_section_cap)
      cmd->add_option("--section-cap", flags.section_cap, "bound on enumerated global sections")
          ->envname("BOHRNET_SECTION_CAP");
    cmd->add_option("--threads", flags.threads, "worker threads for per-cover checks")
        ->envname("BOHRNET_THREADS");
    cmd->add_flag("--no-trivial-context", flags.no_trivial,
                  "exclude the trivial context from generated posets")
        ->envname("BOHRNET_NO_TRIVIAL_CONTEXT");
  };

  CLI::App* check = app.add_subcommand(
      "check", "run the axiom checkers and the descent checker on a net spec");
  check->add_option("spec", spec_path, "net spec JSON file")->required();
  add_common(check, true);

  CLI::App* ks = app.add_subcommand(
      "ks", "count global sections of a projection family's spectral presheaf");
  ks->add_option("dataset", dataset_path, "projection dataset JSON file")->required();
  add_common(ks, true);

  CLI::App* explain = app.add_subcommand(
      "explain", "print the comparison map, adjoint table and adjunction matrix of one cover");
  explain->add_option("spec", spec_path, "net spec JSON file")->required();
  explain->add_option("cover", cover, "cover as 'U;V', e.g. '0;1' or '0..1,3;2'")->required();
  add_common(explain, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      auto out = bohrnet::run_check(spec_path, to_overrides(check, flags));
      emit(out, flags.json_out);
      return out.exit_code;
    }
    if (ks->parsed()) {
      auto out = bohrnet::run_ks(dataset_path, to_overrides(ks, flags));
      emit(out, flags.json_out);
      return out.exit_code;
    }
    if (explain->parsed()) {
      std::cout << bohrnet::run_explain(spec_path, cover, to_overrides(explain, flags));
      return 0;
    }
  } catch (const bohrnet::CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (reached " << e.bound << ")\n";
    return kExitInputError;
  } catch (const bohrnet::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
