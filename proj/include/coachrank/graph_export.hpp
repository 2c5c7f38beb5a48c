#pragma once

#include <filesystem>
#include <sstream>
#include <string>

#include "coachrank/centrality.hpp"
#include "coachrank/csv.hpp"
#include "coachrank/network.hpp"

namespace coachrank {

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string join_margins(const std::vector<int>& margins) {
  std::string out;
  for (size_t i = 0; i < margins.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(margins[i]);
  }
  return out;
}

}  // namespace detail

// Nodes in team order, edges in (source, target) index order, margins
// sorted ascending: identical inputs produce identical bytes.
inline std::string graphml_string(const SeasonNetwork& network,
                                  const CentralityVector& centrality) {
  for (const auto& team : network.teams()) centrality.at(team);  // coverage check

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"d0\" for=\"node\" attr.name=\"centrality\" attr.type=\"double\"/>\n"
      << "  <key id=\"d1\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
      << "  <key id=\"d2\" for=\"edge\" attr.name=\"margins\" attr.type=\"string\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (const auto& team : network.teams()) {
    out << "    <node id=\"" << detail::xml_escape(team) << "\"><data key=\"d0\">"
        << csv::format_double(centrality.at(team)) << "</data></node>\n";
  }
  const auto& teams = network.teams();
  for (const auto& [key, e] : network.edges()) {
    out << "    <edge source=\"" << detail::xml_escape(teams[key.first])
        << "\" target=\"" << detail::xml_escape(teams[key.second]) << "\">"
        << "<data key=\"d1\">" << e.weight << "</data>"
        << "<data key=\"d2\">" << detail::join_margins(e.margins) << "</data>"
        << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

inline void export_graphml(const SeasonNetwork& network,
                           const CentralityVector& centrality,
                           const std::filesystem::path& path) {
  csv::write_file(path, graphml_string(network, centrality));
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// DOT variant with centrality mapped to node width, same determinism
// contract as the GraphML export.
inline std::string dot_string(const SeasonNetwork& network,
                              const CentralityVector& centrality) {
  for (const auto& team : network.teams()) centrality.at(team);

  std::ostringstream out;
  out << "digraph season {\n";
  for (const auto& team : network.teams()) {
    out << "  " << detail::dot_quote(team) << " [width="
        << csv::format_double(centrality.at(team)) << "];\n";
  }
  const auto& teams = network.teams();
  for (const auto& [key, e] : network.edges()) {
    out << "  " << detail::dot_quote(teams[key.first]) << " -> "
        << detail::dot_quote(teams[key.second]) << " [weight=" << e.weight
        << ", label=\"" << detail::join_margins(e.margins) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

inline void export_dot(const SeasonNetwork& network,
                       const CentralityVector& centrality,
                       const std::filesystem::path& path) {
  csv::write_file(path, dot_string(network, centrality));
}

}  // namespace coachrank
