#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace coachrank;
using test_support::TempDir;
using test_support::write_temp;

namespace {

const char* kGamesHeader = "season,date,team_a,score_a,team_b,score_b\n";
const char* kCoachHeader = "season,team,coach\n";

}  // namespace

TEST_CASE("parse_games: plain rows become records") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "games.csv",
                         std::string(kGamesHeader) +
                             "2010,,Duke,82,Butler,61\n"
                             "2010,2010-03-06,Kansas,77,Kentucky,68\n");
  auto result = parse_games(path, AliasTable{});
  REQUIRE(result.ok());
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0] ==
        GameRecord{2010, "Duke", "Butler", 82, 61, ""});
  CHECK(result.records[1].date == "2010-03-06");
}

TEST_CASE("parse_games: aliases canonicalize team names") {
  TempDir dir("ingest");
  auto alias_path = write_temp(dir, "aliases.csv",
                               "raw,canonical\nFlorida St.,Florida State\n");
  auto games_path = write_temp(dir, "games.csv",
                               std::string(kGamesHeader) +
                                   "2010,,Florida St.,70,Miami,60\n");
  AliasTable aliases = load_alias_table(alias_path);
  auto result = parse_games(games_path, aliases);
  REQUIRE(result.ok());
  CHECK(result.records[0].team_a == "Florida State");
}

TEST_CASE("parse_games: invariant violations are reported, not dropped") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "games.csv",
                         std::string(kGamesHeader) +
                             "2010,,Duke,70,Duke,60\n"          // self-game
                             "2010,,Duke,70,Butler,70\n"        // tie
                             "2010,,Duke,70,Butler\n"           // short row
                             "1850,,Duke,70,Butler,60\n"        // season range
                             "2010,,Duke,-3,Butler,60\n"        // negative score
                             "2010,13/01/2010,Duke,70,Butler,60\n"  // bad date
                             "2010,,Duke,82,Butler,61\n");      // good
  auto result = parse_games(path, AliasTable{});
  CHECK(result.records.size() == 1);
  REQUIRE(result.errors.size() == 6);
  CHECK(result.errors[0].line == 2);
  CHECK(result.errors[0].kind == RowErrorKind::MalformedRow);
  CHECK(result.errors[1].kind == RowErrorKind::TieGame);
  CHECK(result.errors[1].line == 3);
}

TEST_CASE("parse_games: missing file throws") {
  CHECK_THROWS_AS(parse_games("/nonexistent/games.csv", AliasTable{}),
                  MissingFileError);
}

TEST_CASE("parse_games: comment lines and blank lines are skipped") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "games.csv",
                         std::string("# season data\n") + kGamesHeader +
                             "\n# mid-file comment\n2010,,Duke,82,Butler,61\n");
  auto result = parse_games(path, AliasTable{});
  REQUIRE(result.ok());
  CHECK(result.records.size() == 1);
}

TEST_CASE("parse_coaches: basic and duplicate handling") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "coaches.csv",
                         std::string(kCoachHeader) +
                             "1971,UCLA,John Wooden\n"
                             "2005,Syracuse,Jim Boeheim\n"
                             "2005,Syracuse,Someone Else\n");
  auto result = parse_coaches(path, AliasTable{});
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0] == CoachAssignment{1971, "UCLA", "John Wooden"});
  REQUIRE(result.errors.size() == 1);
  CHECK(result.errors[0].kind == RowErrorKind::DuplicateAssignment);
}

TEST_CASE("parse_coaches: empty file with header is an empty list") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "coaches.csv", kCoachHeader);
  auto result = parse_coaches(path, AliasTable{});
  CHECK(result.ok());
  CHECK(result.records.empty());
}

TEST_CASE("alias table: chains are rejected") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "aliases.csv",
                         "raw,canonical\nA,B\nB,C\n");
  CHECK_THROWS_AS(load_alias_table(path), ConfigError);
}

TEST_CASE("alias table: many-to-one is fine and idempotent") {
  TempDir dir("ingest");
  auto path = write_temp(dir, "aliases.csv",
                         "raw,canonical\n"
                         "Florida St.,Florida State\n"
                         "FSU,Florida State\n"
                         "Florida State,Florida State\n");
  AliasTable t = load_alias_table(path);
  CHECK(t.apply("FSU") == "Florida State");
  CHECK(t.apply("Florida St.") == "Florida State");
  CHECK(t.apply("unknown") == "unknown");
  // idempotence over a sample of raw names
  for (const std::string name : {"FSU", "Florida St.", "Florida State", "X"})
    CHECK(t.apply(t.apply(name)) == t.apply(name));
}

TEST_CASE("build_season_dataset: filtering, unmatched teams, determinism") {
  std::vector<GameRecord> games = {
      {2010, "Duke", "Butler", 82, 61, ""},
      {2010, "Kansas", "Duke", 70, 60, ""},
      {1971, "UCLA", "Villanova", 68, 62, ""},
  };
  std::vector<CoachAssignment> coaches = {
      {2010, "Duke", "Mike Krzyzewski"},
      {2010, "Butler", "Brad Stevens"},
      {1971, "UCLA", "John Wooden"},
  };
  SeasonDataset ds = build_season_dataset(games, coaches, 2010);
  CHECK(ds.games.size() == 2);
  CHECK(ds.coaches.size() == 2);
  CHECK(ds.unmatched_teams == std::vector<std::string>{"Kansas"});

  SECTION("all teams coached -> no unmatched") {
    coaches.push_back({2010, "Kansas", "Bill Self"});
    SeasonDataset ds2 = build_season_dataset(games, coaches, 2010);
    CHECK(ds2.unmatched_teams.empty());
  }

  SECTION("empty season throws") {
    CHECK_THROWS_AS(build_season_dataset(games, coaches, 2005),
                    EmptySeasonError);
  }

  SECTION("permuting input order changes nothing") {
    auto games_rev = games;
    std::reverse(games_rev.begin(), games_rev.end());
    auto coaches_rev = coaches;
    std::reverse(coaches_rev.begin(), coaches_rev.end());
    CHECK(build_season_dataset(games_rev, coaches_rev, 2010) == ds);
  }
}

TEST_CASE("round trip: serialize then re-parse is the identity") {
  std::vector<GameRecord> games = {
      {2009, "Butler", "Xavier", 69, 68, "2009-01-10"},
      {2009, "Duke", "Butler", 82, 61, ""},
      {2009, "Duke", "Butler", 75, 70, ""},
  };
  std::vector<CoachAssignment> coaches = {
      {2009, "Butler", "Brad Stevens"},
      {2009, "Duke", "Mike Krzyzewski"},
  };
  SeasonDataset ds = build_season_dataset(games, coaches, 2009);

  TempDir dir("roundtrip");
  auto games_path = write_temp(dir, "games.csv", serialize_games(ds.games));
  auto coaches_path =
      write_temp(dir, "coaches.csv", serialize_coaches(ds.coaches));
  auto games2 = parse_games(games_path, AliasTable{});
  auto coaches2 = parse_coaches(coaches_path, AliasTable{});
  REQUIRE(games2.ok());
  REQUIRE(coaches2.ok());
  CHECK(build_season_dataset(games2.records, coaches2.records, 2009) == ds);
}

TEST_CASE("ingest invariant: every game team is coached or unmatched, once") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GameRecord> games;
    const int n = 4 + static_cast<int>(rng.next_below(5));
    for (int g = 0; g < 12; ++g) {
      int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      if (a == b) continue;
      int sa = 50 + static_cast<int>(rng.next_below(30));
      int sb = 50 + static_cast<int>(rng.next_below(30));
      if (sa == sb) ++sa;
      games.push_back({2000, "T" + std::to_string(a), "T" + std::to_string(b),
                       sa, sb, ""});
    }
    if (games.empty()) continue;
    std::vector<CoachAssignment> coaches;
    for (int i = 0; i < n; i += 2)
      coaches.push_back({2000, "T" + std::to_string(i), "C" + std::to_string(i)});
    SeasonDataset ds = build_season_dataset(games, coaches, 2000);

    std::set<std::string> coached, unmatched(ds.unmatched_teams.begin(),
                                             ds.unmatched_teams.end());
    for (const auto& c : ds.coaches) coached.insert(c.team);
    for (const auto& team : teams_in(ds)) {
      const bool in_coached = coached.count(team) > 0;
      const bool in_unmatched = unmatched.count(team) > 0;
      CHECK(in_coached != in_unmatched);
    }
  }
}
