#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace coachrank;
using test_support::grid_search_log_skills;

namespace {

SkillModelParams fit_params() {
  SkillModelParams p;
  p.alpha = 1.0;
  p.w_player = 10.0;
  p.w_coach = 10.0;
  p.scale = 5.0;
  p.amplitude = 1.0;
  return p;
}

PowellConfig fit_config(std::uint64_t seed = 0, int restarts = 2) {
  PowellConfig c;
  c.x_tol = 1e-9;
  c.f_tol = 1e-12;
  c.max_iters = 400;
  c.max_line_iters = 200;
  c.restarts = restarts;
  c.seed = seed;
  return c;
}

// ten identical wins of A over B, margin +5, equal team skills
std::vector<GameObservation> lopsided_observations() {
  std::vector<GameObservation> obs;
  for (int i = 0; i < 10; ++i)
    obs.push_back(GameObservation{"A", "B", 5, 0.5, 0.5});
  return obs;
}

const std::map<std::string, std::string> kTwoTeams{{"A", "CA"}, {"B", "CB"}};

}  // namespace

TEST_CASE("fit_season: repeated wins push the winning coach above the loser") {
  SkillModelParams params = fit_params();
  FitResult fit = fit_season(lopsided_observations(), kTwoTeams, params,
                             fit_config(7));
  REQUIRE(fit.skills.contains("CA"));
  REQUIRE(fit.skills.contains("CB"));
  CHECK(fit.skills.at("CA") > fit.skills.at("CB"));

  // brute-force 2-d grid over log-skills confirms the sign independently
  auto cost = [&](const std::vector<double>& z) {
    CoachSkillVector skills{{{"CA", std::exp(z[0])}, {"CB", std::exp(z[1])}}};
    return cost_J(lopsided_observations(), skills, kTwoTeams, params);
  };
  auto grid = grid_search_log_skills(cost, 2, -2.3, 2.3, 2e-2);
  CHECK(grid.z[0] > grid.z[1]);
}

TEST_CASE("fit_season: grid-search equivalence on random 2-coach instances") {
  Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    SkillModelParams params = fit_params();
    // random instance: margins near the model's predictions plus noise
    const double true_ca = rng.uniform(0.6, 1.6);
    const double true_cb = rng.uniform(0.6, 1.6);
    const double t_a = rng.uniform(0.4, 1.0);
    const double t_b = rng.uniform(0.4, 1.0);
    std::vector<GameObservation> obs;
    const int n_games = 8 + static_cast<int>(rng.next_below(6));
    for (int g = 0; g < n_games; ++g) {
      GameObservation o{"A", "B", 0, t_a, t_b};
      const double pe = t_a / true_ca - t_b / true_cb;
      const double ce = coach_effect(true_ca, true_cb, t_a / true_ca,
                                     t_b / true_cb, params.alpha);
      const double predicted = params.w_player * pe + params.w_coach * ce;
      int margin = static_cast<int>(std::lround(predicted + rng.uniform(-2.0, 2.0)));
      if (margin == 0) margin = 1;
      o.margin = margin;
      obs.push_back(o);
    }

    FitResult fit = fit_season(obs, kTwoTeams, params, fit_config(trial));
    auto cost = [&](const std::vector<double>& z) {
      CoachSkillVector skills{{{"CA", std::exp(z[0])}, {"CB", std::exp(z[1])}}};
      return cost_J(obs, skills, kTwoTeams, params);
    };
    auto grid = grid_search_log_skills(cost, 2, -2.3, 2.3, 1e-2);
    CHECK(fit.final_cost <= grid.cost + 1e-3);
    CHECK(fit.final_cost >= grid.cost - 1e-3);
  }
}

TEST_CASE("fit_season: noise-free synthetic skills recovered within 5%") {
  SyntheticSpec spec;
  spec.n_teams = 6;
  spec.games_per_pair = 4;
  spec.noise_sigma = 0.0;
  spec.seed = 12345;
  Rng skill_rng(2024);
  spec.true_coach_skills = test_support::spread_coach_skills(skill_rng, 6, 1.2);
  spec.true_player_skills = test_support::mild_player_skills(skill_rng, 6);

  SkillModelParams params = fit_params();
  SyntheticSeason synth = generate_synthetic(spec, params);
  auto obs = true_skill_observations(synth);

  FitResult fit = fit_season(obs, synth.truth.team_coach, params, fit_config(5, 3));
  for (const auto& [coach, truth] : synth.truth.coach_skills) {
    REQUIRE(fit.skills.contains(coach));
    CHECK(fit.skills.at(coach) ==
          Catch::Approx(truth).epsilon(0.05));
  }
}

TEST_CASE("fit_season: single coached team never ends worse than the start") {
  SkillModelParams params = fit_params();
  std::map<std::string, std::string> assignments{{"A", "CA"}};  // B unmatched
  std::vector<GameObservation> obs{
      {"A", "B", 4, 0.6, 0.5}, {"A", "B", -2, 0.6, 0.5}, {"B", "A", 3, 0.5, 0.6}};
  const double start_cost =
      cost_J(obs, CoachSkillVector{{{"CA", 1.0}}}, assignments, params);
  FitResult fit = fit_season(obs, assignments, params, fit_config(1, 0));
  CHECK(fit.final_cost <= start_cost);
  CHECK(fit.skills.skills.size() == 1);
  // one free coach: gauge fixing pins its skill to exactly 1
  CHECK(fit.skills.at("CA") == Catch::Approx(1.0));
}

TEST_CASE("fit_season: cost trace is non-increasing and ends at final_cost") {
  FitResult fit = fit_season(lopsided_observations(), kTwoTeams, fit_params(),
                             fit_config(3));
  REQUIRE_FALSE(fit.cost_trace.empty());
  for (size_t i = 1; i < fit.cost_trace.size(); ++i)
    CHECK(fit.cost_trace[i] <= fit.cost_trace[i - 1]);
  CHECK(fit.final_cost == fit.cost_trace.back());
}

TEST_CASE("fit_season: identical inputs and seed give bit-identical results") {
  auto run = [&] {
    return fit_season(lopsided_observations(), kTwoTeams, fit_params(),
                      fit_config(99, 3));
  };
  FitResult a = run();
  FitResult b = run();
  CHECK(a.skills.skills == b.skills.skills);
  CHECK(a.final_cost == b.final_cost);
  CHECK(a.cost_trace == b.cost_trace);
  CHECK(a.restart_index == b.restart_index);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("fit_season: gauge-fixed skills have geometric mean 1") {
  Rng rng(55);
  SyntheticSpec spec;
  spec.n_teams = 5;
  spec.games_per_pair = 2;
  spec.noise_sigma = 1.0;
  spec.seed = 777;
  spec.true_coach_skills = test_support::spread_coach_skills(rng, 5, 1.25);
  spec.true_player_skills = test_support::mild_player_skills(rng, 5);
  SkillModelParams params = fit_params();
  SyntheticSeason synth = generate_synthetic(spec, params);
  FitResult fit = fit_season(true_skill_observations(synth),
                             synth.truth.team_coach, params, fit_config(4));
  double log_sum = 0.0;
  for (const auto& [coach, skill] : fit.skills.skills) {
    CHECK(skill > 0.0);
    log_sum += std::log(skill);
  }
  CHECK(log_sum == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("fit_season: no coached teams is an error") {
  SkillModelParams params = fit_params();
  std::vector<GameObservation> obs{{"A", "B", 4, 0.6, 0.5}};
  CHECK_THROWS_AS(fit_season(obs, {}, params, fit_config()), NoCoachedTeamsError);
  CHECK_THROWS_AS(fit_season({}, kTwoTeams, params, fit_config()),
                  NoCoachedTeamsError);
}

TEST_CASE("gauge shift of the start point leaves the fitted ordering unchanged") {
  // optimize the model cost directly from shifted starting points
  SyntheticSpec spec;
  spec.n_teams = 4;
  spec.games_per_pair = 3;
  spec.noise_sigma = 1.0;
  spec.seed = 31;
  Rng rng(8);
  spec.true_coach_skills = test_support::spread_coach_skills(rng, 4, 1.3);
  spec.true_player_skills = test_support::mild_player_skills(rng, 4);
  SkillModelParams params = fit_params();
  SyntheticSeason synth = generate_synthetic(spec, params);
  auto obs = true_skill_observations(synth);
  const auto& assignments = synth.truth.team_coach;

  std::vector<std::string> coaches;
  for (const auto& [team, coach] : assignments) coaches.push_back(coach);
  std::sort(coaches.begin(), coaches.end());
  auto objective = [&](const std::vector<double>& z) {
    CoachSkillVector skills;
    for (size_t i = 0; i < coaches.size(); ++i)
      skills.skills[coaches[i]] = std::exp(z[i]);
    return cost_J(obs, skills, assignments, params);
  };

  auto order_from = [&](double shift) {
    PowellResult r = powell_minimize(
        objective, std::vector<double>(coaches.size(), shift), fit_config());
    double mean = 0.0;
    for (double v : r.x) mean += v;
    mean /= static_cast<double>(r.x.size());
    std::map<std::string, double> skills;
    for (size_t i = 0; i < coaches.size(); ++i)
      skills[coaches[i]] = std::exp(r.x[i] - mean);
    return test_support::order_by_skill_desc(skills);
  };

  const auto base = order_from(0.0);
  CHECK(order_from(0.5) == base);
  CHECK(order_from(-0.7) == base);
}
