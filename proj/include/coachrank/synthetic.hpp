#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "coachrank/errors.hpp"
#include "coachrank/ingest.hpp"
#include "coachrank/model.hpp"
#include "coachrank/rng.hpp"

namespace coachrank {

// Ground-truth season description. Team and coach ids are paired by sorted
// index (i-th team gets the i-th coach); player skills are injected
// directly, so recovery tests can isolate the fitting machinery from
// centrality estimation.
struct SyntheticSpec {
  int n_teams = 0;
  int games_per_pair = 0;
  std::map<std::string, double> true_coach_skills;
  std::map<std::string, double> true_player_skills;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  int season = 2000;

  void validate() const {
    if (n_teams < 2) throw ConfigError("synthetic spec needs n_teams >= 2");
    if (games_per_pair < 1)
      throw ConfigError("synthetic spec needs games_per_pair >= 1");
    if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
    if (static_cast<int>(true_coach_skills.size()) != n_teams ||
        static_cast<int>(true_player_skills.size()) != n_teams)
      throw ConfigError("skill maps must have exactly n_teams entries");
    for (const auto& [name, s] : true_coach_skills)
      if (!(s > 0.0)) throw ConfigError("coach skill must be > 0: " + name);
    for (const auto& [name, s] : true_player_skills)
      if (!(s > 0.0)) throw ConfigError("player skill must be > 0: " + name);
    if (season < kFirstSeason)
      throw ConfigError("season must be >= " + std::to_string(kFirstSeason));
  }
};

struct SyntheticTruth {
  std::map<std::string, double> coach_skills;   // by coach id
  std::map<std::string, double> player_skills;  // by team id
  std::map<std::string, double> team_skills;    // T = C * P, by team id
  std::map<std::string, std::string> team_coach;
};

struct SyntheticSeason {
  SeasonDataset dataset;
  SyntheticTruth truth;
};

namespace detail {

// Nearest nonzero integer: draws inside (-0.5, 0.5) keep their sign, exact
// zero goes to +1 (the data model has no ties).
inline int round_margin(double m) {
  long r = std::lround(m);
  if (r != 0) return static_cast<int>(r);
  if (m > 0.0) return 1;
  if (m < 0.0) return -1;
  return 1;
}

}  // namespace detail

// Plays games_per_pair games for every team pair; the expected margin is the
// model prediction from the true skills, noise_sigma adds Gaussian spread,
// and the sign of the realized margin decides the winner. Deterministic
// under spec.seed.
inline SyntheticSeason generate_synthetic(const SyntheticSpec& spec,
                                          const SkillModelParams& params = {}) {
  spec.validate();
  params.validate();

  std::vector<std::string> teams;
  for (const auto& [team, s] : spec.true_player_skills) teams.push_back(team);
  std::vector<std::string> coaches;
  for (const auto& [coach, s] : spec.true_coach_skills) coaches.push_back(coach);

  SyntheticTruth truth;
  truth.player_skills = spec.true_player_skills;
  truth.coach_skills = spec.true_coach_skills;
  for (size_t i = 0; i < teams.size(); ++i) {
    truth.team_coach.emplace(teams[i], coaches[i]);
    truth.team_skills.emplace(
        teams[i], spec.true_coach_skills.at(coaches[i]) *
                      spec.true_player_skills.at(teams[i]));
  }

  Rng rng(spec.seed);
  std::vector<GameRecord> games;
  const int base_score = 50;
  for (size_t i = 0; i < teams.size(); ++i) {
    for (size_t j = i + 1; j < teams.size(); ++j) {
      const double p_i = spec.true_player_skills.at(teams[i]);
      const double p_j = spec.true_player_skills.at(teams[j]);
      const double c_i = spec.true_coach_skills.at(coaches[i]);
      const double c_j = spec.true_coach_skills.at(coaches[j]);
      const double expected =
          params.w_player * (p_i - p_j) +
          params.w_coach * coach_effect(c_i, c_j, p_i, p_j, params.alpha);
      for (int g = 0; g < spec.games_per_pair; ++g) {
        double m = expected;
        if (spec.noise_sigma > 0.0) m += spec.noise_sigma * rng.next_gaussian();
        const int margin = detail::round_margin(m);
        GameRecord rec;
        rec.season = spec.season;
        rec.team_a = teams[i];
        rec.team_b = teams[j];
        if (margin > 0) {
          rec.score_a = base_score + margin;
          rec.score_b = base_score;
        } else {
          rec.score_a = base_score;
          rec.score_b = base_score - margin;
        }
        games.push_back(std::move(rec));
      }
    }
  }

  std::vector<CoachAssignment> assignments;
  for (size_t i = 0; i < teams.size(); ++i)
    assignments.push_back(CoachAssignment{spec.season, teams[i], coaches[i]});

  SyntheticSeason out;
  out.dataset = build_season_dataset(games, assignments, spec.season);
  out.truth = std::move(truth);
  return out;
}

// Observations with the true team skills injected directly (no centrality);
// the strict recovery oracle for the fitting stage.
inline std::vector<GameObservation> true_skill_observations(
    const SyntheticSeason& synth) {
  std::vector<GameObservation> obs;
  obs.reserve(synth.dataset.games.size());
  for (const auto& g : synth.dataset.games) {
    obs.push_back(GameObservation{g.team_a, g.team_b, g.margin_signed(),
                                  synth.truth.team_skills.at(g.team_a),
                                  synth.truth.team_skills.at(g.team_b)});
  }
  return obs;
}

}  // namespace coachrank
