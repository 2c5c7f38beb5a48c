#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "coachrank/errors.hpp"
#include "coachrank/ingest.hpp"
#include "coachrank/pipeline.hpp"

namespace coachrank {

enum class PerturbationKind { DeleteGame, FlipResult };

inline const char* to_string(PerturbationKind kind) {
  return kind == PerturbationKind::DeleteGame ? "delete_game" : "flip_result";
}

// Identifies one game: the occurrence-th record (0-based, canonical order)
// whose (team_a, team_b) columns match exactly.
struct Perturbation {
  PerturbationKind kind = PerturbationKind::DeleteGame;
  int season = 0;
  std::string team_a;
  std::string team_b;
  int occurrence = 0;
};

struct SensitivityReport {
  std::string coach;
  std::string perturbation;
  double baseline_skill = 0.0;
  double perturbed_skill = 0.0;
  double relative_change = 0.0;  // (perturbed - baseline) / baseline
  int baseline_rank = 0;         // 1-based, full descending skill order
  int perturbed_rank = 0;
};

// Deletes or flips exactly one game, then rebuilds the dataset so the
// canonical ordering and unmatched-team list stay consistent.
inline SeasonDataset apply_perturbation(const SeasonDataset& dataset,
                                        const Perturbation& p) {
  if (p.season != dataset.season)
    throw TargetNotFoundError("perturbation season " + std::to_string(p.season) +
                              " does not match dataset season " +
                              std::to_string(dataset.season));
  std::vector<GameRecord> games = dataset.games;
  int seen = 0;
  size_t target = games.size();
  for (size_t i = 0; i < games.size(); ++i) {
    if (games[i].team_a == p.team_a && games[i].team_b == p.team_b) {
      if (seen == p.occurrence) {
        target = i;
        break;
      }
      ++seen;
    }
  }
  if (target == games.size())
    throw TargetNotFoundError("no game #" + std::to_string(p.occurrence) +
                              " between `" + p.team_a + "` and `" + p.team_b +
                              "` in season " + std::to_string(p.season));
  if (p.kind == PerturbationKind::DeleteGame) {
    games.erase(games.begin() + static_cast<std::ptrdiff_t>(target));
  } else {
    std::swap(games[target].score_a, games[target].score_b);
  }
  return build_season_dataset(games, dataset.coaches, dataset.season);
}

namespace detail {

inline int rank_of_coach(const FitResult& fit, const std::string& coach) {
  const double skill = fit.skills.at(coach);
  int rank = 1;
  for (const auto& [other, s] : fit.skills.skills) {
    if (s > skill || (s == skill && other < coach)) ++rank;
  }
  return rank;
}

}  // namespace detail

// Runs the full pipeline on the baseline and the perturbed dataset with
// identical config and seed, and reports the skill/rank delta of one coach.
inline SensitivityReport sensitivity_run(const SeasonDataset& dataset,
                                         const Perturbation& p,
                                         const std::string& focus_coach,
                                         const PipelineConfig& config,
                                         std::uint64_t seed) {
  const auto assignments = coach_map(dataset);
  const bool coached = std::any_of(
      assignments.begin(), assignments.end(),
      [&](const auto& kv) { return kv.second == focus_coach; });
  if (!coached)
    throw Error("focus coach `" + focus_coach + "` has no team in season " +
                std::to_string(dataset.season));

  const SeasonAnalysis baseline = run_season_pipeline(dataset, config, seed);
  const SeasonAnalysis perturbed =
      run_season_pipeline(apply_perturbation(dataset, p), config, seed);

  SensitivityReport report;
  report.coach = focus_coach;
  report.perturbation = to_string(p.kind);
  report.baseline_skill = baseline.fit.skills.at(focus_coach);
  report.perturbed_skill = perturbed.fit.skills.at(focus_coach);
  report.relative_change =
      (report.perturbed_skill - report.baseline_skill) / report.baseline_skill;
  report.baseline_rank = detail::rank_of_coach(baseline.fit, focus_coach);
  report.perturbed_rank = detail::rank_of_coach(perturbed.fit, focus_coach);
  return report;
}

}  // namespace coachrank
