#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <ctime>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coachrank/csv.hpp"
#include "coachrank/errors.hpp"

namespace coachrank {

constexpr int kFirstSeason = 1869;

inline int current_year() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
#if defined(_WIN32)
  gmtime_s(&tm, &now);
#else
  gmtime_r(&now, &tm);
#endif
  return tm.tm_year + 1900;
}

// One played game. `season` is the year the season ends; `date` is an
// optional ISO-8601 day. score_a != score_b always holds (ties are rejected
// at parse time).
struct GameRecord {
  int season = 0;
  std::string team_a;
  std::string team_b;
  int score_a = 0;
  int score_b = 0;
  std::string date;  // empty when unknown

  const std::string& winner() const { return score_a > score_b ? team_a : team_b; }
  const std::string& loser() const { return score_a > score_b ? team_b : team_a; }
  int margin_abs() const { return std::abs(score_a - score_b); }
  // signed margin from team_a's perspective
  int margin_signed() const { return score_a - score_b; }

  auto operator<=>(const GameRecord&) const = default;
};

struct CoachAssignment {
  int season = 0;
  std::string team;
  std::string coach;

  auto operator<=>(const CoachAssignment&) const = default;
};

// Maps raw source spellings onto canonical names. Many-to-one; chains
// (canonical name itself re-mapped elsewhere) are rejected at load time,
// which is what makes apply() idempotent.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::map<std::string, std::string> entries)
      : entries_(std::move(entries)) {}

  const std::string& apply(const std::string& raw) const {
    auto it = entries_.find(raw);
    return it == entries_.end() ? raw : it->second;
  }

  bool empty() const { return entries_.empty(); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

struct SeasonDataset {
  int season = 0;
  std::vector<GameRecord> games;
  std::vector<CoachAssignment> coaches;
  std::vector<std::string> unmatched_teams;

  bool operator==(const SeasonDataset&) const = default;
};

template <typename T>
struct ParseResult {
  std::vector<T> records;
  std::vector<RowError> errors;

  bool ok() const { return errors.empty(); }
};

namespace detail {

inline bool valid_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (s[i] < '0' || s[i] > '9') return false;
  auto month = csv::parse_int(s.substr(5, 2));
  auto day = csv::parse_int(s.substr(8, 2));
  return month && *month >= 1 && *month <= 12 && day && *day >= 1 && *day <= 31;
}

}  // namespace detail

// Games CSV: `season,date,team_a,score_a,team_b,score_b`. Rows that violate
// the GameRecord invariants land in the error report instead of being
// dropped on the floor.
inline ParseResult<GameRecord> parse_games(const std::filesystem::path& path,
                                           const AliasTable& aliases) {
  ParseResult<GameRecord> result;
  const int year_max = current_year();
  for (const auto& row : csv::read_file(path, "season,date,team_a,score_a,team_b,score_b")) {
    auto bad = [&](const std::string& why) {
      result.errors.push_back({row.line, RowErrorKind::MalformedRow, why});
    };
    if (row.fields.size() != 6) {
      bad("expected 6 fields, got " + std::to_string(row.fields.size()));
      continue;
    }
    auto season = csv::parse_int(row.fields[0]);
    auto score_a = csv::parse_int(row.fields[3]);
    auto score_b = csv::parse_int(row.fields[5]);
    const std::string& date = row.fields[1];
    if (!season) { bad("season is not an integer: `" + row.fields[0] + "`"); continue; }
    if (*season < kFirstSeason || *season > year_max) {
      bad("season " + std::to_string(*season) + " outside [" +
          std::to_string(kFirstSeason) + ", " + std::to_string(year_max) + "]");
      continue;
    }
    if (!score_a || *score_a < 0) { bad("bad score_a: `" + row.fields[3] + "`"); continue; }
    if (!score_b || *score_b < 0) { bad("bad score_b: `" + row.fields[5] + "`"); continue; }
    if (!date.empty() && !detail::valid_iso_date(date)) {
      bad("date is not ISO-8601 (YYYY-MM-DD): `" + date + "`");
      continue;
    }
    std::string team_a = aliases.apply(row.fields[2]);
    std::string team_b = aliases.apply(row.fields[4]);
    if (team_a.empty() || team_b.empty()) { bad("empty team name"); continue; }
    if (team_a == team_b) { bad("self-game: `" + team_a + "` vs itself"); continue; }
    if (*score_a == *score_b) {
      result.errors.push_back(
          {row.line, RowErrorKind::TieGame,
           "tie " + std::to_string(*score_a) + "-" + std::to_string(*score_b) +
               " between `" + team_a + "` and `" + team_b + "`"});
      continue;
    }
    result.records.push_back(GameRecord{static_cast<int>(*season), team_a, team_b,
                                        static_cast<int>(*score_a),
                                        static_cast<int>(*score_b), date});
  }
  return result;
}

// Coaches CSV: `season,team,coach`; at most one coach per (season, team).
inline ParseResult<CoachAssignment> parse_coaches(const std::filesystem::path& path,
                                                  const AliasTable& aliases) {
  ParseResult<CoachAssignment> result;
  const int year_max = current_year();
  std::set<std::pair<int, std::string>> seen;
  for (const auto& row : csv::read_file(path, "season,team,coach")) {
    auto bad = [&](const std::string& why) {
      result.errors.push_back({row.line, RowErrorKind::MalformedRow, why});
    };
    if (row.fields.size() != 3) {
      bad("expected 3 fields, got " + std::to_string(row.fields.size()));
      continue;
    }
    auto season = csv::parse_int(row.fields[0]);
    if (!season || *season < kFirstSeason || *season > year_max) {
      bad("bad season: `" + row.fields[0] + "`");
      continue;
    }
    std::string team = aliases.apply(row.fields[1]);
    std::string coach = aliases.apply(row.fields[2]);
    if (team.empty()) { bad("empty team name"); continue; }
    if (coach.empty()) { bad("empty coach name"); continue; }
    if (!seen.insert({static_cast<int>(*season), team}).second) {
      result.errors.push_back(
          {row.line, RowErrorKind::DuplicateAssignment,
           "duplicate assignment for (" + std::to_string(*season) + ", " + team + ")"});
      continue;
    }
    result.records.push_back(
        CoachAssignment{static_cast<int>(*season), team, coach});
  }
  return result;
}

// Alias CSV: `raw,canonical`. Rejects chained entries so that applying the
// table twice equals applying it once.
inline ParseResult<std::pair<std::string, std::string>> parse_alias_rows(
    const std::filesystem::path& path) {
  ParseResult<std::pair<std::string, std::string>> result;
  std::map<std::string, std::pair<int, std::string>> by_raw;  // raw -> (line, canonical)
  for (const auto& row : csv::read_file(path, "raw,canonical")) {
    if (row.fields.size() != 2 || row.fields[0].empty() || row.fields[1].empty()) {
      result.errors.push_back({row.line, RowErrorKind::MalformedRow,
                               "expected `raw,canonical` with nonempty fields"});
      continue;
    }
    const std::string& raw = row.fields[0];
    const std::string& canonical = row.fields[1];
    auto it = by_raw.find(raw);
    if (it != by_raw.end()) {
      if (it->second.second != canonical) {
        result.errors.push_back({row.line, RowErrorKind::AliasConflict,
                                 "`" + raw + "` maps to both `" + it->second.second +
                                     "` and `" + canonical + "`"});
      }
      continue;
    }
    by_raw.emplace(raw, std::make_pair(row.line, canonical));
    result.records.emplace_back(raw, canonical);
  }
  // chain check: no canonical name may itself be re-mapped elsewhere
  for (const auto& [raw, entry] : by_raw) {
    const auto& [line, canonical] = entry;
    auto it = by_raw.find(canonical);
    if (it != by_raw.end() && it->second.second != canonical) {
      result.errors.push_back(
          {line, RowErrorKind::AliasConflict,
           "chained alias: `" + raw + "` -> `" + canonical + "` -> `" +
               it->second.second + "`"});
    }
  }
  if (!result.errors.empty()) result.records.clear();
  return result;
}

inline AliasTable load_alias_table(const std::filesystem::path& path) {
  auto parsed = parse_alias_rows(path);
  if (!parsed.ok()) {
    std::ostringstream msg;
    msg << path.string() << ": invalid alias table";
    for (const auto& e : parsed.errors)
      msg << "\n  line " << e.line << ": " << e.message;
    throw ConfigError(msg.str());
  }
  std::map<std::string, std::string> entries;
  for (auto& [raw, canonical] : parsed.records) entries.emplace(raw, canonical);
  return AliasTable(std::move(entries));
}

// Filters both inputs down to one season, in canonical order. Ordering is
// value-based so permuting the input rows cannot change the result.
inline SeasonDataset build_season_dataset(const std::vector<GameRecord>& games,
                                          const std::vector<CoachAssignment>& coaches,
                                          int season) {
  SeasonDataset ds;
  ds.season = season;
  for (const auto& g : games)
    if (g.season == season) ds.games.push_back(g);
  if (ds.games.empty()) throw EmptySeasonError(season);
  std::sort(ds.games.begin(), ds.games.end(),
            [](const GameRecord& a, const GameRecord& b) {
              return std::tie(a.team_a, a.team_b, a.date, a.score_a, a.score_b) <
                     std::tie(b.team_a, b.team_b, b.date, b.score_a, b.score_b);
            });

  for (const auto& c : coaches)
    if (c.season == season) ds.coaches.push_back(c);
  std::sort(ds.coaches.begin(), ds.coaches.end());

  std::set<std::string> coached;
  for (const auto& c : ds.coaches) coached.insert(c.team);
  std::set<std::string> unmatched;
  for (const auto& g : ds.games) {
    if (!coached.count(g.team_a)) unmatched.insert(g.team_a);
    if (!coached.count(g.team_b)) unmatched.insert(g.team_b);
  }
  ds.unmatched_teams.assign(unmatched.begin(), unmatched.end());
  return ds;
}

inline std::vector<int> seasons_in(const std::vector<GameRecord>& games) {
  std::set<int> seasons;
  for (const auto& g : games) seasons.insert(g.season);
  return {seasons.begin(), seasons.end()};
}

// team -> coach for one season
inline std::map<std::string, std::string> coach_map(const SeasonDataset& ds) {
  std::map<std::string, std::string> m;
  for (const auto& c : ds.coaches) m.emplace(c.team, c.coach);
  return m;
}

inline std::vector<std::string> teams_in(const SeasonDataset& ds) {
  std::set<std::string> teams;
  for (const auto& g : ds.games) {
    teams.insert(g.team_a);
    teams.insert(g.team_b);
  }
  return {teams.begin(), teams.end()};
}

// Canonical CSV serialization; parse_games(serialize_games(ds)) round-trips.
inline std::string serialize_games(const std::vector<GameRecord>& games) {
  std::ostringstream out;
  out << "season,date,team_a,score_a,team_b,score_b\n";
  for (const auto& g : games) {
    out << g.season << ',' << g.date << ',' << g.team_a << ',' << g.score_a
        << ',' << g.team_b << ',' << g.score_b << '\n';
  }
  return out.str();
}

inline std::string serialize_coaches(const std::vector<CoachAssignment>& coaches) {
  std::ostringstream out;
  out << "season,team,coach\n";
  for (const auto& c : coaches)
    out << c.season << ',' << c.team << ',' << c.coach << '\n';
  return out.str();
}

}  // namespace coachrank
