#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coachrank/cli.hpp"

namespace {

coachrank::RunConfig load_config(const std::string& config_path,
                                 std::int64_t seed_flag, int jobs_flag) {
  coachrank::RunConfig config = coachrank::load_run_config(config_path);
  if (seed_flag >= 0) config.seed = static_cast<std::uint64_t>(seed_flag);
  if (jobs_flag > 0) config.jobs = jobs_flag;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coach ranking from season game records"};
  app.require_subcommand(1);

  std::string config_path;
  std::int64_t seed_flag = -1;  // -1: keep the config value
  int jobs_flag = 0;
  app.add_option("--config", config_path, "run config JSON");
  app.add_option("--seed", seed_flag, "override the config seed");
  app.add_option("--jobs", jobs_flag, "worker threads for per-season work");

  auto* validate = app.add_subcommand("validate", "parse inputs and report problems");
  auto* rank = app.add_subcommand("rank", "full pipeline: centrality, fit, career ranking");
  auto* centrality = app.add_subcommand(
      "centrality", "centrality-only stop: scores and graph exports");
  bool dot = false;
  centrality->add_flag("--dot", dot, "also write DOT exports");

  auto* sensitivity = app.add_subcommand(
      "sensitivity", "compare a coach's fit before and after one perturbation");
  std::string perturbation_path, focus_coach, report_path;
  sensitivity->add_option("--perturbation", perturbation_path, "perturbation JSON")
      ->required();
  sensitivity->add_option("--coach", focus_coach, "coach to report on")->required();
  sensitivity->add_option("--out", report_path, "report path (default <output_dir>/sensitivity.json)");

  auto* synth = app.add_subcommand("synth", "generate a synthetic season with ground truth");
  std::string spec_path, synth_out_dir;
  synth->add_option("--spec", spec_path, "synthetic spec JSON")->required();
  synth->add_option("--out-dir", synth_out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return coachrank::cmd_synth(spec_path, synth_out_dir, std::cout);

    if (config_path.empty()) {
      std::cerr << "error: --config is required for this subcommand\n";
      return coachrank::kExitFatal;
    }
    const coachrank::RunConfig config =
        load_config(config_path, seed_flag, jobs_flag);
    if (validate->parsed()) return coachrank::cmd_validate(config, std::cout);
    if (rank->parsed()) return coachrank::cmd_rank(config, std::cout);
    if (centrality->parsed())
      return coachrank::cmd_centrality(config, dot, std::cout);
    if (sensitivity->parsed()) {
      const std::filesystem::path report =
          report_path.empty() ? config.output_dir / "sensitivity.json"
                              : std::filesystem::path(report_path);
      return coachrank::cmd_sensitivity(config, perturbation_path, focus_coach,
                                        report, std::cout);
    }
  } catch (const coachrank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return coachrank::kExitFatal;
  }
  return coachrank::kExitFatal;
}
