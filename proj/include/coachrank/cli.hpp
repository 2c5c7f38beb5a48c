#pragma once

#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "coachrank/graph_export.hpp"
#include "coachrank/pipeline.hpp"
#include "coachrank/rank.hpp"
#include "coachrank/sensitivity.hpp"
#include "coachrank/serialize.hpp"
#include "coachrank/synthetic.hpp"

namespace coachrank {

// exit codes shared by every subcommand
constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;  // some seasons failed; see failures.json
constexpr int kExitFatal = 2;    // config or input error

struct RunConfig {
  std::filesystem::path games_path;
  std::filesystem::path coaches_path;
  std::filesystem::path alias_path;  // empty: identity mapping
  std::vector<int> seasons;          // empty: every season in the games file
  PipelineConfig pipeline;
  int k = 5;
  int min_years = 5;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::filesystem::path output_dir;
};

inline RunConfig run_config_from_json(const json& j,
                                      const std::filesystem::path& base_dir) {
  detail::reject_unknown_keys(
      j, "run config",
      {"games", "coaches", "aliases", "seasons", "epsilon", "centrality_tol",
       "centrality_max_iter", "rescale_centrality", "model", "optimizer", "k",
       "min_years", "seed", "jobs", "output_dir"});
  RunConfig config;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  if (!j.contains("games") || !j.contains("coaches") || !j.contains("output_dir"))
    throw ConfigError("run config needs `games`, `coaches` and `output_dir`");
  config.games_path = resolve(j.at("games").get<std::string>());
  config.coaches_path = resolve(j.at("coaches").get<std::string>());
  if (j.contains("aliases"))
    config.alias_path = resolve(j.at("aliases").get<std::string>());
  config.output_dir = resolve(j.at("output_dir").get<std::string>());

  if (j.contains("seasons")) {
    const auto& s = j.at("seasons");
    if (s.is_array()) {
      config.seasons = s.get<std::vector<int>>();
    } else if (s.is_object() && s.contains("from") && s.contains("to")) {
      const int from = s.at("from").get<int>();
      const int to = s.at("to").get<int>();
      if (from > to) throw ConfigError("seasons.from must be <= seasons.to");
      for (int year = from; year <= to; ++year) config.seasons.push_back(year);
    } else {
      throw ConfigError("seasons must be a list or {from, to}");
    }
    if (config.seasons.empty()) throw ConfigError("seasons must be nonempty");
  }

  config.pipeline.epsilon = detail::get_or(j, "epsilon", kDefaultEpsilon);
  config.pipeline.centrality_tol =
      detail::get_or(j, "centrality_tol", kDefaultCentralityTol);
  config.pipeline.centrality_max_iter =
      detail::get_or(j, "centrality_max_iter", kDefaultCentralityMaxIter);
  config.pipeline.rescale_centrality =
      detail::get_or(j, "rescale_centrality", true);
  if (j.contains("model")) {
    ModelSection section = model_section_from_json(j.at("model"));
    config.pipeline.model = section.params;
    config.pipeline.scale_auto = section.scale_auto;
  }
  if (j.contains("optimizer"))
    config.pipeline.optimizer = powell_config_from_json(j.at("optimizer"));
  config.k = detail::get_or(j, "k", 5);
  config.min_years = detail::get_or(j, "min_years", 5);
  config.seed = detail::get_or<std::uint64_t>(j, "seed", config.pipeline.optimizer.seed);
  config.jobs = detail::get_or(j, "jobs", 1);
  if (config.k < 1) throw ConfigError("k must be >= 1");
  if (config.min_years < 1) throw ConfigError("min_years must be >= 1");
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  return config;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(load_json_file(path),
                              path.has_parent_path()
                                  ? path.parent_path()
                                  : std::filesystem::path("."));
}

struct LoadedInputs {
  AliasTable aliases;
  ParseResult<GameRecord> games;
  ParseResult<CoachAssignment> coaches;

  bool clean() const { return games.ok() && coaches.ok(); }
};

inline LoadedInputs load_inputs(const RunConfig& config) {
  LoadedInputs inputs;
  if (!config.alias_path.empty())
    inputs.aliases = load_alias_table(config.alias_path);
  inputs.games = parse_games(config.games_path, inputs.aliases);
  inputs.coaches = parse_coaches(config.coaches_path, inputs.aliases);
  return inputs;
}

inline std::vector<int> resolve_seasons(const RunConfig& config,
                                        const std::vector<GameRecord>& games) {
  if (!config.seasons.empty()) return config.seasons;
  auto seasons = seasons_in(games);
  if (seasons.empty()) throw ConfigError("games file contains no seasons");
  return seasons;
}

namespace detail {

inline void print_row_errors(std::ostream& out, const std::string& file,
                             const std::vector<RowError>& errors) {
  for (const auto& e : errors) {
    out << file << ":" << e.line << ": [" << to_string(e.kind) << "] "
        << e.message << "\n";
  }
}

}  // namespace detail

// Parses everything, reports row errors and per-season coverage. Exit 0 only
// when no row errors exist; unmatched teams are warnings (the pipeline fits
// them with fixed skill 1).
inline int cmd_validate(const RunConfig& config, std::ostream& out) {
  const LoadedInputs inputs = load_inputs(config);
  detail::print_row_errors(out, config.games_path.filename().string(),
                           inputs.games.errors);
  detail::print_row_errors(out, config.coaches_path.filename().string(),
                           inputs.coaches.errors);

  const auto seasons = resolve_seasons(config, inputs.games.records);
  out << "seasons: " << seasons.size() << " (" << seasons.front() << ".."
      << seasons.back() << ")\n";
  for (int season : seasons) {
    try {
      const SeasonDataset ds = build_season_dataset(
          inputs.games.records, inputs.coaches.records, season);
      out << "season " << season << ": " << ds.games.size() << " games, "
          << teams_in(ds).size() << " teams, " << ds.coaches.size()
          << " coached";
      if (!ds.unmatched_teams.empty()) {
        out << ", unmatched:";
        for (const auto& team : ds.unmatched_teams) out << " " << team;
      }
      out << "\n";
    } catch (const EmptySeasonError&) {
      out << "season " << season << ": no games\n";
    }
  }
  const size_t n_errors = inputs.games.errors.size() + inputs.coaches.errors.size();
  out << (n_errors == 0 ? "ok" : "failed") << ": " << n_errors
      << " row error(s)\n";
  return n_errors == 0 ? kExitOk : kExitFatal;
}

namespace detail {

struct SeasonOutcome {
  int season = 0;
  bool failed = false;
  std::string stage;
  std::string message;
  YearlyRanking ranking;
};

// Runs fn(season_index) over a pool of `jobs` workers. Work items are
// independent; the index handoff is the only shared state.
template <typename Fn>
void parallel_for_each(size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(jobs, static_cast<int>(count));
  pool.reserve(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline void write_failures(const std::filesystem::path& dir,
                           const std::vector<SeasonOutcome>& outcomes) {
  json failures = json::array();
  for (const auto& o : outcomes) {
    if (!o.failed) continue;
    failures.push_back(json{
        {"season", o.season}, {"stage", o.stage}, {"message", o.message}});
  }
  csv::write_file(dir / "failures.json", failures.dump(2) + "\n");
}

}  // namespace detail

// Full pipeline over every requested season, then career aggregation.
// Per-season failures (for example centrality divergence) go to
// failures.json without aborting the rest; rerunning with identical inputs
// and seed overwrites every output with identical bytes.
inline int cmd_rank(const RunConfig& config, std::ostream& out) {
  const LoadedInputs inputs = load_inputs(config);
  if (!inputs.clean()) {
    detail::print_row_errors(out, config.games_path.string(), inputs.games.errors);
    detail::print_row_errors(out, config.coaches_path.string(),
                             inputs.coaches.errors);
    return kExitFatal;
  }
  const auto seasons = resolve_seasons(config, inputs.games.records);
  std::filesystem::create_directories(config.output_dir);

  std::vector<detail::SeasonOutcome> outcomes(seasons.size());
  detail::parallel_for_each(seasons.size(), config.jobs, [&](size_t i) {
    const int season = seasons[i];
    auto& outcome = outcomes[i];
    outcome.season = season;
    try {
      SeasonDataset ds = build_season_dataset(inputs.games.records,
                                              inputs.coaches.records, season);
      SeasonAnalysis analysis = run_season_pipeline(
          std::move(ds), config.pipeline, derive_seed(config.seed, season));
      const std::string year = std::to_string(season);
      csv::write_file(config.output_dir / ("season_" + year + ".json"),
                      to_json(analysis.fit).dump(2) + "\n");
      csv::write_file(config.output_dir / ("centrality_" + year + ".csv"),
                      centrality_to_csv(analysis.centrality));
      export_graphml(analysis.network, analysis.centrality,
                     config.output_dir / ("network_" + year + ".graphml"));
      outcome.ranking = yearly_top_k(season, analysis.fit, config.k);
    } catch (const Error& e) {
      outcome.failed = true;
      outcome.stage = dynamic_cast<const NotConvergedError*>(&e) ? "centrality"
                                                                 : "pipeline";
      outcome.message = e.what();
    }
  });

  std::vector<YearlyRanking> rankings;
  for (const auto& o : outcomes)
    if (!o.failed) rankings.push_back(o.ranking);
  const auto careers = career_values(rankings, inputs.coaches.records, config.k,
                                     config.min_years);
  csv::write_file(config.output_dir / "career.csv", career_to_csv(careers));
  csv::write_file(config.output_dir / "career.json",
                  career_to_json(careers).dump(2) + "\n");
  detail::write_failures(config.output_dir, outcomes);

  bool any_failed = false;
  for (const auto& o : outcomes) {
    if (o.failed) {
      any_failed = true;
      out << "season " << o.season << " failed (" << o.stage
          << "): " << o.message << "\n";
    }
  }
  out << "ranked " << rankings.size() << "/" << seasons.size()
      << " season(s); outputs in " << config.output_dir.string() << "\n";
  return any_failed ? kExitPartial : kExitOk;
}

// Centrality-only stop for debugging epsilon choices: emits the centrality
// CSV and graph exports per season, no fitting. Non-converged seasons still
// get their best iterate written, plus a failures.json entry.
inline int cmd_centrality(const RunConfig& config, bool also_dot,
                          std::ostream& out) {
  const LoadedInputs inputs = load_inputs(config);
  if (!inputs.clean()) {
    detail::print_row_errors(out, config.games_path.string(), inputs.games.errors);
    detail::print_row_errors(out, config.coaches_path.string(),
                             inputs.coaches.errors);
    return kExitFatal;
  }
  const auto seasons = resolve_seasons(config, inputs.games.records);
  std::filesystem::create_directories(config.output_dir);

  std::vector<detail::SeasonOutcome> outcomes(seasons.size());
  detail::parallel_for_each(seasons.size(), config.jobs, [&](size_t i) {
    const int season = seasons[i];
    auto& outcome = outcomes[i];
    outcome.season = season;
    try {
      const SeasonDataset ds = build_season_dataset(
          inputs.games.records, inputs.coaches.records, season);
      const SeasonNetwork network = build_network(ds);
      const CentralityVector centrality = eigenvector_centrality(
          network, config.pipeline.epsilon, config.pipeline.centrality_tol,
          config.pipeline.centrality_max_iter);
      const std::string year = std::to_string(season);
      csv::write_file(config.output_dir / ("centrality_" + year + ".csv"),
                      centrality_to_csv(centrality));
      export_graphml(network, centrality,
                     config.output_dir / ("network_" + year + ".graphml"));
      if (also_dot)
        export_dot(network, centrality,
                   config.output_dir / ("network_" + year + ".dot"));
      if (!centrality.converged) {
        outcome.failed = true;
        outcome.stage = "centrality";
        outcome.message = "did not converge after " +
                          std::to_string(centrality.iterations) + " iterations";
      }
    } catch (const Error& e) {
      outcome.failed = true;
      outcome.stage = "pipeline";
      outcome.message = e.what();
    }
  });
  detail::write_failures(config.output_dir, outcomes);

  bool any_failed = false;
  for (const auto& o : outcomes) {
    if (o.failed) {
      any_failed = true;
      out << "season " << o.season << " failed (" << o.stage
          << "): " << o.message << "\n";
    }
  }
  return any_failed ? kExitPartial : kExitOk;
}

// Baseline-vs-perturbed comparison for one coach; writes the report JSON.
inline int cmd_sensitivity(const RunConfig& config,
                           const std::filesystem::path& perturbation_path,
                           const std::string& focus_coach,
                           const std::filesystem::path& report_path,
                           std::ostream& out) {
  const Perturbation p = perturbation_from_json(load_json_file(perturbation_path));
  const LoadedInputs inputs = load_inputs(config);
  if (!inputs.clean()) {
    detail::print_row_errors(out, config.games_path.string(), inputs.games.errors);
    detail::print_row_errors(out, config.coaches_path.string(),
                             inputs.coaches.errors);
    return kExitFatal;
  }
  const SeasonDataset ds = build_season_dataset(inputs.games.records,
                                                inputs.coaches.records, p.season);
  const SensitivityReport report = sensitivity_run(
      ds, p, focus_coach, config.pipeline, derive_seed(config.seed, p.season));

  if (report_path.has_parent_path())
    std::filesystem::create_directories(report_path.parent_path());
  csv::write_file(report_path, to_json(report).dump(2) + "\n");
  out << to_string(p.kind) << " " << p.team_a << " vs " << p.team_b << " #"
      << p.occurrence << ": skill " << csv::format_double(report.baseline_skill)
      << " -> " << csv::format_double(report.perturbed_skill) << " ("
      << csv::format_double(100.0 * report.relative_change) << "%), rank "
      << report.baseline_rank << " -> " << report.perturbed_rank << "\n";
  return kExitOk;
}

// Generates a synthetic season in the ingest schema plus its ground truth.
inline int cmd_synth(const std::filesystem::path& spec_path,
                     const std::filesystem::path& out_dir, std::ostream& out) {
  const SynthSection section = synthetic_spec_from_json(load_json_file(spec_path));
  const SyntheticSeason synth = generate_synthetic(section.spec, section.params);
  std::filesystem::create_directories(out_dir);
  csv::write_file(out_dir / "games.csv", serialize_games(synth.dataset.games));
  csv::write_file(out_dir / "coaches.csv",
                  serialize_coaches(synth.dataset.coaches));
  csv::write_file(out_dir / "aliases.csv", "raw,canonical\n");
  csv::write_file(out_dir / "truth.json", to_json(synth.truth).dump(2) + "\n");
  out << "wrote " << synth.dataset.games.size() << " games for season "
      << synth.dataset.season << " to " << out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace coachrank
