#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coachrank/errors.hpp"

namespace coachrank::csv {

// One parsed line: 1-based line number plus its comma-split fields.
struct Row {
  int line = 0;
  std::vector<std::string> fields;
};

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// Reads a CSV file: UTF-8, comma-delimited, `#` comment lines and blank
// lines skipped. The first non-comment line must equal `expected_header`.
// Throws MissingFileError / IoError; malformed rows are the caller's
// business.
inline std::vector<Row> read_file(const std::filesystem::path& path,
                                  const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw MissingFileError(path.string());

  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      std::string squeezed;
      for (char c : t)
        if (c != ' ' && c != '\t') squeezed += c;
      if (squeezed != expected_header) {
        throw IoError(path.string() + ": expected header `" + expected_header +
                      "`, got `" + t + "`");
      }
      header_seen = true;
      continue;
    }
    rows.push_back(Row{lineno, split_fields(t)});
  }
  if (!header_seen) {
    throw IoError(path.string() + ": missing header `" + expected_header + "`");
  }
  return rows;
}

// Locale-independent integer parse; rejects trailing junk.
inline std::optional<long long> parse_int(std::string_view s) {
  long long value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || s.empty()) return std::nullopt;
  return value;
}

inline std::optional<double> parse_double(std::string_view s) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    return std::nullopt;
  return value;
}

// Shortest round-trip formatting; keeps emitted files byte-stable and
// locale-independent.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::string read_entire_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFileError(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace coachrank::csv
