#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "coachrank/centrality.hpp"
#include "coachrank/errors.hpp"
#include "coachrank/ingest.hpp"

namespace coachrank {

// Model constants. The margin model predicts
//   w_player * (T_a/C_a - T_b/C_b) + w_coach * coach_effect
// for the signed margin of a game; `scale` divides the residual inside the
// Gaussian likelihood kernel and `amplitude` is its peak value.
struct SkillModelParams {
  double alpha = 10.0;     // player-gap damping of the coach effect
  double w_player = 1.0;   // weight on the player-skill difference
  double w_coach = 1.0;    // weight on the coach effect
  double scale = 1.0;      // residual scale; > 0
  double amplitude = 1.0;  // likelihood peak; > 0

  void validate() const {
    if (!(scale > 0.0)) throw ConfigError("model scale must be > 0");
    if (!(amplitude > 0.0)) throw ConfigError("model amplitude must be > 0");
    if (alpha < 0.0) throw ConfigError("model alpha must be >= 0");
  }
};

// Per-coach multiplicative skill factors; always strictly positive.
struct CoachSkillVector {
  std::map<std::string, double> skills;

  double at(const std::string& coach) const {
    auto it = skills.find(coach);
    if (it == skills.end()) throw Error("no skill for coach: " + coach);
    return it->second;
  }
  bool contains(const std::string& coach) const { return skills.count(coach) > 0; }
};

// One game as seen by the fit: signed margin (positive means a beat b) plus
// the centrality team skills of both sides.
struct GameObservation {
  std::string team_a;
  std::string team_b;
  int margin = 0;   // nonzero; sign is a's perspective
  double t_a = 0.0; // team skill of a, > 0
  double t_b = 0.0; // team skill of b, > 0
};

// Inversion of T = C * P.
inline double player_skill(double team_skill, double coach_skill) {
  if (!(coach_skill > 0.0))
    throw NonpositiveCoachSkillError("coach skill must be > 0, got " +
                                     std::to_string(coach_skill));
  return team_skill / coach_skill;
}

// Coach-skill difference attenuated by the player-skill gap: the coach only
// swings evenly-matched games.
inline double coach_effect(double c_a, double c_b, double p_a, double p_b,
                           double alpha) {
  return (c_a - c_b) / (1.0 + alpha * std::abs(p_a - p_b));
}

// Model-predicted margin minus the observed one.
inline double margin_residual(const GameObservation& obs, double c_a, double c_b,
                              const SkillModelParams& params) {
  const double p_a = player_skill(obs.t_a, c_a);
  const double p_b = player_skill(obs.t_b, c_b);
  const double player_effect = p_a - p_b;
  const double ce = coach_effect(c_a, c_b, p_a, p_b, params.alpha);
  return params.w_player * player_effect + params.w_coach * ce -
         static_cast<double>(obs.margin);
}

// Probability weight that a beats b by the observed margin; peaks at
// `amplitude` when the model prediction equals the margin exactly.
inline double margin_probability(const GameObservation& obs, double c_a,
                                 double c_b, const SkillModelParams& params) {
  const double r = margin_residual(obs, c_a, c_b, params) / params.scale;
  return params.amplitude * std::exp(-r * r);
}

namespace detail {

// Deterministic pairwise summation; keeps parallel partition-and-sum
// reductions bit-identical to the sequential result.
inline double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  const size_t n = hi - lo;
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const size_t mid = lo + n / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v, 0, v.size());
}

// Coach skill of a team: fitted value when the team has a coach, fixed 1.0
// (the multiplicative identity) when it does not.
inline double team_coach_skill(const std::string& team,
                               const std::map<std::string, std::string>& assignments,
                               const CoachSkillVector& skills) {
  auto it = assignments.find(team);
  if (it == assignments.end()) return 1.0;
  if (!skills.contains(it->second)) throw MissingCoachError(team);
  return skills.at(it->second);
}

}  // namespace detail

// Sum of squared margin residuals over the season.
inline double cost_J(const std::vector<GameObservation>& observations,
                     const CoachSkillVector& skills,
                     const std::map<std::string, std::string>& assignments,
                     const SkillModelParams& params) {
  std::vector<double> terms;
  terms.reserve(observations.size());
  for (const auto& obs : observations) {
    const double c_a = detail::team_coach_skill(obs.team_a, assignments, skills);
    const double c_b = detail::team_coach_skill(obs.team_b, assignments, skills);
    const double r = margin_residual(obs, c_a, c_b, params);
    terms.push_back(r * r);
  }
  return detail::pairwise_sum(terms);
}

// Log of margin_probability, evaluated in the log domain so large residuals
// cannot underflow to log(0).
inline double log_margin_probability(const GameObservation& obs, double c_a,
                                     double c_b, const SkillModelParams& params) {
  const double r = margin_residual(obs, c_a, c_b, params) / params.scale;
  return std::log(params.amplitude) - r * r;
}

// Sum of log margin probabilities; equals n*log(amplitude) - J / scale^2,
// so minimizing J maximizes the season likelihood.
inline double season_log_likelihood(
    const std::vector<GameObservation>& observations,
    const CoachSkillVector& skills,
    const std::map<std::string, std::string>& assignments,
    const SkillModelParams& params) {
  std::vector<double> terms;
  terms.reserve(observations.size());
  for (const auto& obs : observations) {
    const double c_a = detail::team_coach_skill(obs.team_a, assignments, skills);
    const double c_b = detail::team_coach_skill(obs.team_b, assignments, skills);
    terms.push_back(log_margin_probability(obs, c_a, c_b, params));
  }
  return detail::pairwise_sum(terms);
}

// Turns season games plus centrality scores into fit observations. When
// `rescale` is set, team skills are divided by the season maximum so the
// largest is 1; raw centrality entries are O(1/sqrt(n)) while margins are
// O(10), and the rescaled values give w_player a season-independent unit.
inline std::vector<GameObservation> build_observations(
    const SeasonDataset& dataset, const CentralityVector& centrality,
    bool rescale = true) {
  double div = 1.0;
  if (rescale) {
    const double m = centrality.max_score();
    if (m > 0.0) div = m;
  }
  std::vector<GameObservation> obs;
  obs.reserve(dataset.games.size());
  for (const auto& g : dataset.games) {
    obs.push_back(GameObservation{g.team_a, g.team_b, g.margin_signed(),
                                  centrality.at(g.team_a) / div,
                                  centrality.at(g.team_b) / div});
  }
  return obs;
}

inline double mean_abs_margin(const std::vector<GameObservation>& observations) {
  if (observations.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& o : observations) sum += std::abs(o.margin);
  return sum / static_cast<double>(observations.size());
}

}  // namespace coachrank
