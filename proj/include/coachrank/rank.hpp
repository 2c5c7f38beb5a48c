#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coachrank/fit.hpp"
#include "coachrank/ingest.hpp"

namespace coachrank {

struct YearlyRanking {
  int season = 0;
  // descending by fitted skill; exact ties broken lexicographically by coach
  std::vector<std::pair<std::string, double>> entries;
  bool tie_broken = false;  // set when any tie-break was applied
};

struct CareerRecord {
  std::string coach;
  int n_appearances = 0;  // seasons in the yearly top-k
  int n_years = 0;        // seasons with any coaching assignment
  double value = 0.0;     // n_appearances / n_years

  bool operator==(const CareerRecord&) const = default;
};

inline YearlyRanking yearly_top_k(int season, const FitResult& fit, int k) {
  if (k < 1) throw ConfigError("top-k requires k >= 1");
  YearlyRanking ranking;
  ranking.season = season;
  std::vector<std::pair<std::string, double>> all(fit.skills.skills.begin(),
                                                  fit.skills.skills.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (size_t i = 0; i + 1 < all.size(); ++i)
    if (all[i].second == all[i + 1].second) ranking.tie_broken = true;
  const size_t take = std::min(all.size(), static_cast<size_t>(k));
  ranking.entries.assign(all.begin(), all.begin() + take);
  return ranking;
}

// Career value per coach: the fraction of coached seasons that landed in the
// yearly top-k. Appearances at different teams accumulate onto the one coach
// id, which is how mid-career team changes are handled.
inline std::vector<CareerRecord> career_values(
    const std::vector<YearlyRanking>& rankings,
    const std::vector<CoachAssignment>& assignments, int k, int min_years) {
  if (k < 1) throw ConfigError("top-k requires k >= 1");
  if (min_years < 1) throw ConfigError("min_years must be >= 1");

  std::map<std::string, std::set<int>> coached_seasons;
  for (const auto& a : assignments) coached_seasons[a.coach].insert(a.season);

  std::map<std::string, std::set<int>> appearance_seasons;
  for (const auto& ranking : rankings) {
    const size_t take =
        std::min(ranking.entries.size(), static_cast<size_t>(k));
    for (size_t i = 0; i < take; ++i)
      appearance_seasons[ranking.entries[i].first].insert(ranking.season);
  }

  std::vector<CareerRecord> records;
  for (const auto& [coach, seasons] : coached_seasons) {
    const int n_years = static_cast<int>(seasons.size());
    if (n_years < min_years) continue;
    CareerRecord rec;
    rec.coach = coach;
    rec.n_years = n_years;
    auto it = appearance_seasons.find(coach);
    rec.n_appearances = it == appearance_seasons.end()
                            ? 0
                            : static_cast<int>(it->second.size());
    rec.value = static_cast<double>(rec.n_appearances) /
                static_cast<double>(rec.n_years);
    records.push_back(std::move(rec));
  }
  std::sort(records.begin(), records.end(),
            [](const CareerRecord& a, const CareerRecord& b) {
              if (a.value != b.value) return a.value > b.value;
              if (a.n_years != b.n_years) return a.n_years > b.n_years;
              return a.coach < b.coach;
            });
  return records;
}

}  // namespace coachrank
