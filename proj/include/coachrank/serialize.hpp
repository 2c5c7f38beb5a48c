#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "coachrank/errors.hpp"
#include "coachrank/fit.hpp"
#include "coachrank/model.hpp"
#include "coachrank/pipeline.hpp"
#include "coachrank/powell.hpp"
#include "coachrank/rank.hpp"
#include "coachrank/sensitivity.hpp"
#include "coachrank/synthetic.hpp"

namespace coachrank {

using nlohmann::json;

namespace detail {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for `") + key + "`: " + e.what());
  }
}

inline void reject_unknown_keys(const json& j, const char* what,
                                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) { known = true; break; }
    if (!known)
      throw ConfigError(std::string("unknown key `") + key + "` in " + what);
  }
}

}  // namespace detail

// Model params document: exactly the five keys, all optional. A scale given
// as null or absent means "derive from the season's mean absolute margin";
// the caller sees that via ModelSection.scale_auto.
struct ModelSection {
  SkillModelParams params;
  bool scale_auto = true;
};

inline ModelSection model_section_from_json(const json& j) {
  detail::reject_unknown_keys(j, "model section",
                              {"alpha", "w_player", "w_coach", "scale", "amplitude"});
  ModelSection section;
  section.params.alpha = detail::get_or(j, "alpha", section.params.alpha);
  section.params.w_player = detail::get_or(j, "w_player", section.params.w_player);
  section.params.w_coach = detail::get_or(j, "w_coach", section.params.w_coach);
  section.params.amplitude =
      detail::get_or(j, "amplitude", section.params.amplitude);
  if (j.contains("scale") && !j.at("scale").is_null()) {
    section.params.scale = j.at("scale").get<double>();
    section.scale_auto = false;
  }
  section.params.validate();
  return section;
}

inline json to_json(const SkillModelParams& p) {
  return json{{"alpha", p.alpha},
              {"w_player", p.w_player},
              {"w_coach", p.w_coach},
              {"scale", p.scale},
              {"amplitude", p.amplitude}};
}

inline PowellConfig powell_config_from_json(const json& j) {
  detail::reject_unknown_keys(j, "optimizer section",
                              {"x_tol", "f_tol", "max_iters", "max_line_iters",
                               "restarts", "seed", "bounds_log"});
  PowellConfig c;
  c.x_tol = detail::get_or(j, "x_tol", c.x_tol);
  c.f_tol = detail::get_or(j, "f_tol", c.f_tol);
  c.max_iters = detail::get_or(j, "max_iters", c.max_iters);
  c.max_line_iters = detail::get_or(j, "max_line_iters", c.max_line_iters);
  c.restarts = detail::get_or(j, "restarts", c.restarts);
  c.seed = detail::get_or(j, "seed", c.seed);
  if (j.contains("bounds_log")) {
    const auto& b = j.at("bounds_log");
    if (!b.is_array() || b.size() != 2)
      throw ConfigError("bounds_log must be [lower, upper]");
    c.bounds_log_lo = b[0].get<double>();
    c.bounds_log_hi = b[1].get<double>();
  }
  c.validate();
  return c;
}

inline json to_json(const PowellConfig& c) {
  return json{{"x_tol", c.x_tol},
              {"f_tol", c.f_tol},
              {"max_iters", c.max_iters},
              {"max_line_iters", c.max_line_iters},
              {"restarts", c.restarts},
              {"seed", c.seed},
              {"bounds_log", {c.bounds_log_lo, c.bounds_log_hi}}};
}

inline json to_json(const FitResult& fit) {
  json skills = json::object();
  for (const auto& [coach, skill] : fit.skills.skills) skills[coach] = skill;
  return json{{"skills", skills},
              {"final_cost", fit.final_cost},
              {"iterations", fit.iterations},
              {"converged", fit.converged},
              {"restart_index", fit.restart_index},
              {"cost_trace", fit.cost_trace}};
}

inline json to_json(const SensitivityReport& r) {
  return json{{"coach", r.coach},
              {"perturbation", r.perturbation},
              {"baseline_skill", r.baseline_skill},
              {"perturbed_skill", r.perturbed_skill},
              {"relative_change", r.relative_change},
              {"baseline_rank", r.baseline_rank},
              {"perturbed_rank", r.perturbed_rank}};
}

inline Perturbation perturbation_from_json(const json& j) {
  detail::reject_unknown_keys(
      j, "perturbation", {"kind", "season", "team_a", "team_b", "occurrence"});
  Perturbation p;
  const std::string kind = detail::get_or<std::string>(j, "kind", "");
  if (kind == "delete_game") p.kind = PerturbationKind::DeleteGame;
  else if (kind == "flip_result") p.kind = PerturbationKind::FlipResult;
  else throw ConfigError("perturbation kind must be `delete_game` or `flip_result`");
  if (!j.contains("season") || !j.contains("team_a") || !j.contains("team_b"))
    throw ConfigError("perturbation needs season, team_a, team_b");
  p.season = j.at("season").get<int>();
  p.team_a = j.at("team_a").get<std::string>();
  p.team_b = j.at("team_b").get<std::string>();
  p.occurrence = detail::get_or(j, "occurrence", 0);
  return p;
}

inline json to_json(const Perturbation& p) {
  return json{{"kind", to_string(p.kind)},
              {"season", p.season},
              {"team_a", p.team_a},
              {"team_b", p.team_b},
              {"occurrence", p.occurrence}};
}

// Synthetic spec file; an optional `model` section supplies the generation
// constants (defaults otherwise).
struct SynthSection {
  SyntheticSpec spec;
  SkillModelParams params;
};

inline SynthSection synthetic_spec_from_json(const json& j) {
  detail::reject_unknown_keys(j, "synthetic spec",
                              {"n_teams", "games_per_pair", "true_coach_skills",
                               "true_player_skills", "noise_sigma", "seed",
                               "season", "model"});
  SynthSection section;
  section.spec.n_teams = detail::get_or(j, "n_teams", 0);
  section.spec.games_per_pair = detail::get_or(j, "games_per_pair", 0);
  section.spec.noise_sigma = detail::get_or(j, "noise_sigma", 0.0);
  section.spec.seed = detail::get_or<std::uint64_t>(j, "seed", 0);
  section.spec.season = detail::get_or(j, "season", 2000);
  if (j.contains("true_coach_skills"))
    section.spec.true_coach_skills =
        j.at("true_coach_skills").get<std::map<std::string, double>>();
  if (j.contains("true_player_skills"))
    section.spec.true_player_skills =
        j.at("true_player_skills").get<std::map<std::string, double>>();
  if (j.contains("model"))
    section.params = model_section_from_json(j.at("model")).params;
  section.spec.validate();
  return section;
}

inline json to_json(const SyntheticTruth& truth) {
  return json{{"coach_skills", truth.coach_skills},
              {"player_skills", truth.player_skills},
              {"team_skills", truth.team_skills},
              {"team_coach", truth.team_coach}};
}

inline json career_to_json(const std::vector<CareerRecord>& records) {
  json arr = json::array();
  int rank = 1;
  for (const auto& r : records) {
    arr.push_back(json{{"rank", rank++},
                       {"coach", r.coach},
                       {"value", r.value},
                       {"n_appearances", r.n_appearances},
                       {"n_years", r.n_years}});
  }
  return arr;
}

inline std::string career_to_csv(const std::vector<CareerRecord>& records) {
  std::string out = "rank,coach,value,n_appearances,n_years\n";
  int rank = 1;
  for (const auto& r : records) {
    out += std::to_string(rank++) + "," + r.coach + "," +
           csv::format_double(r.value) + "," + std::to_string(r.n_appearances) +
           "," + std::to_string(r.n_years) + "\n";
  }
  return out;
}

inline std::string centrality_to_csv(const CentralityVector& centrality) {
  std::string out = "team,centrality\n";
  for (const auto& [team, score] : centrality.scores)
    out += team + "," + csv::format_double(score) + "\n";
  return out;
}

inline json load_json_file(const std::filesystem::path& path) {
  const std::string text = csv::read_entire_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ConfigError("invalid JSON in " + path.string());
  return j;
}

}  // namespace coachrank
