#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coachrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingFileError : public Error {
 public:
  explicit MissingFileError(const std::string& path)
      : Error("missing file: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptySeasonError : public Error {
 public:
  explicit EmptySeasonError(int season)
      : Error("no games found for season " + std::to_string(season)),
        season_(season) {}
  int season() const { return season_; }

 private:
  int season_;
};

class DegenerateNetworkError : public Error {
 public:
  using Error::Error;
};

class NonpositiveCoachSkillError : public Error {
 public:
  using Error::Error;
};

class MissingCoachError : public Error {
 public:
  explicit MissingCoachError(const std::string& team)
      : Error("no skill entry for the coach of team: " + team), team_(team) {}
  const std::string& team() const { return team_; }

 private:
  std::string team_;
};

class InvalidBracketError : public Error {
 public:
  using Error::Error;
};

class NonFiniteObjectiveError : public Error {
 public:
  explicit NonFiniteObjectiveError(std::vector<double> point)
      : Error("objective is not finite at the evaluated point"),
        point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

class NoCoachedTeamsError : public Error {
 public:
  using Error::Error;
};

class TargetNotFoundError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Row-level input problems are collected into reports instead of thrown, so
// one bad line never hides the rest of the file.
enum class RowErrorKind {
  MalformedRow,
  TieGame,
  DuplicateAssignment,
  AliasConflict,
};

inline const char* to_string(RowErrorKind kind) {
  switch (kind) {
    case RowErrorKind::MalformedRow: return "MalformedRow";
    case RowErrorKind::TieGame: return "TieGame";
    case RowErrorKind::DuplicateAssignment: return "DuplicateAssignment";
    case RowErrorKind::AliasConflict: return "AliasConflict";
  }
  return "Unknown";
}

struct RowError {
  int line = 0;
  RowErrorKind kind = RowErrorKind::MalformedRow;
  std::string message;

  bool operator==(const RowError&) const = default;
};

}  // namespace coachrank
