#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coachrank/errors.hpp"
#include "coachrank/model.hpp"
#include "coachrank/powell.hpp"
#include "coachrank/rng.hpp"

namespace coachrank {

struct FitResult {
  CoachSkillVector skills;          // gauge-fixed: geometric mean 1
  double final_cost = 0.0;          // last element of cost_trace
  int iterations = 0;               // outer sweeps of the winning run
  bool converged = false;
  int restart_index = 0;            // which start won (0 = the z = 0 start)
  std::vector<double> cost_trace;   // non-increasing
};

namespace detail {

// Quadratic penalty outside [lo, hi] on each log-skill coordinate; keeps
// Powell unconstrained while making the objective coercive.
constexpr double kBoundPenaltyWeight = 1e4;

inline double bounds_penalty(const std::vector<double>& z, double lo, double hi) {
  double pen = 0.0;
  for (double v : z) {
    if (v < lo) pen += (lo - v) * (lo - v);
    else if (v > hi) pen += (v - hi) * (v - hi);
  }
  return kBoundPenaltyWeight * pen;
}

// Observations compiled against the coach-variable indexing so the
// objective avoids per-evaluation map lookups. Index -1 marks a team with
// no coach, whose skill is fixed at 1.
struct CompiledObservation {
  int var_a = -1;
  int var_b = -1;
  double t_a = 0.0;
  double t_b = 0.0;
  double margin = 0.0;
};

struct CompiledSeason {
  std::vector<std::string> coaches;  // sorted; position = variable index
  std::vector<CompiledObservation> observations;

  double cost(const std::vector<double>& skills_by_var,
              const SkillModelParams& params) const {
    std::vector<double> terms;
    terms.reserve(observations.size());
    for (const auto& o : observations) {
      const double c_a = o.var_a < 0 ? 1.0 : skills_by_var[o.var_a];
      const double c_b = o.var_b < 0 ? 1.0 : skills_by_var[o.var_b];
      const double p_a = o.t_a / c_a;
      const double p_b = o.t_b / c_b;
      const double pe = p_a - p_b;
      const double ce = (c_a - c_b) / (1.0 + params.alpha * std::abs(pe));
      const double r = params.w_player * pe + params.w_coach * ce - o.margin;
      terms.push_back(r * r);
    }
    return pairwise_sum(terms);
  }
};

inline CompiledSeason compile_season(
    const std::vector<GameObservation>& observations,
    const std::map<std::string, std::string>& assignments) {
  std::set<std::string> coached;
  for (const auto& obs : observations) {
    if (auto it = assignments.find(obs.team_a); it != assignments.end())
      coached.insert(it->second);
    if (auto it = assignments.find(obs.team_b); it != assignments.end())
      coached.insert(it->second);
  }
  if (observations.empty() || coached.empty())
    throw NoCoachedTeamsError(
        observations.empty() ? "no observations to fit"
                             : "no observed team has a coach assignment");

  CompiledSeason compiled;
  compiled.coaches.assign(coached.begin(), coached.end());
  std::map<std::string, int> var_of;
  for (size_t i = 0; i < compiled.coaches.size(); ++i)
    var_of.emplace(compiled.coaches[i], static_cast<int>(i));

  auto var_for_team = [&](const std::string& team) {
    auto it = assignments.find(team);
    if (it == assignments.end()) return -1;
    return var_of.at(it->second);
  };
  for (const auto& obs : observations) {
    compiled.observations.push_back(CompiledObservation{
        var_for_team(obs.team_a), var_for_team(obs.team_b), obs.t_a, obs.t_b,
        static_cast<double>(obs.margin)});
  }
  return compiled;
}

}  // namespace detail

// Fits per-coach skills by minimizing cost_J over z = log(skills); the log
// parameterization keeps skills positive with no projection. Runs the z = 0
// start plus `config.restarts` random starts drawn uniformly inside the log
// bounds, keeps the best (ties go to the lowest restart index), and
// normalizes the winning skills to geometric mean 1 so values are
// comparable across seasons.
inline FitResult fit_season(const std::vector<GameObservation>& observations,
                            const std::map<std::string, std::string>& assignments,
                            const SkillModelParams& params,
                            const PowellConfig& config) {
  config.validate();
  params.validate();
  const auto compiled = detail::compile_season(observations, assignments);
  const size_t n = compiled.coaches.size();
  const double lo = config.bounds_log_lo;
  const double hi = config.bounds_log_hi;

  auto objective = [&](const std::vector<double>& z) {
    std::vector<double> skills(z.size());
    for (size_t i = 0; i < z.size(); ++i) skills[i] = std::exp(z[i]);
    return compiled.cost(skills, params) + detail::bounds_penalty(z, lo, hi);
  };

  PowellResult best;
  int best_restart = -1;
  for (int r = 0; r <= config.restarts; ++r) {
    std::vector<double> z0(n, 0.0);
    if (r > 0) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
      for (auto& v : z0) v = rng.uniform(lo, hi);
    }
    PowellResult run = powell_minimize(objective, std::move(z0), config);
    if (best_restart < 0 || run.f < best.f) {
      best = std::move(run);
      best_restart = r;
    }
  }

  // gauge fix: geometric mean 1
  double mean_log = 0.0;
  for (double v : best.x) mean_log += v;
  mean_log /= static_cast<double>(n);

  FitResult result;
  for (size_t i = 0; i < n; ++i)
    result.skills.skills.emplace(compiled.coaches[i],
                                 std::exp(best.x[i] - mean_log));
  result.final_cost = best.f;
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.restart_index = best_restart;
  result.cost_trace = std::move(best.trace);
  return result;
}

}  // namespace coachrank
