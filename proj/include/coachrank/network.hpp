#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "coachrank/errors.hpp"
#include "coachrank/ingest.hpp"

namespace coachrank {

// Small dense row-major matrix; seasons have at most a few hundred teams so
// dense is the right representation (damping fills it in anyway).
struct DenseMatrix {
  size_t n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(size_t n_) : n(n_), a(n_ * n_, 0.0) {}

  double& at(size_t i, size_t j) { return a[i * n + j]; }
  double at(size_t i, size_t j) const { return a[i * n + j]; }
};

// weight == margins.size(); margins kept sorted for canonical serialization
struct EdgeData {
  int weight = 0;
  std::vector<int> margins;

  bool operator==(const EdgeData&) const = default;
};

// Weighted win/loss digraph of one season. Nodes are teams in lexicographic
// order; an edge winner -> loser carries the win count and the multiset of
// winning margins.
class SeasonNetwork {
 public:
  SeasonNetwork() = default;
  explicit SeasonNetwork(std::vector<std::string> teams)
      : teams_(std::move(teams)) {
    for (size_t i = 0; i < teams_.size(); ++i) index_.emplace(teams_[i], i);
  }

  const std::vector<std::string>& teams() const { return teams_; }
  size_t size() const { return teams_.size(); }

  size_t index_of(const std::string& team) const {
    auto it = index_.find(team);
    if (it == index_.end())
      throw Error("unknown team in network: " + team);
    return it->second;
  }

  void add_win(const std::string& winner, const std::string& loser, int margin) {
    if (winner == loser) throw Error("self-loop edge: " + winner);
    if (margin <= 0) throw Error("margin must be positive");
    auto& edge = edges_[{index_of(winner), index_of(loser)}];
    edge.weight += 1;
    auto pos = std::lower_bound(edge.margins.begin(), edge.margins.end(), margin);
    edge.margins.insert(pos, margin);
  }

  const std::map<std::pair<size_t, size_t>, EdgeData>& edges() const {
    return edges_;
  }

  const EdgeData* edge(const std::string& winner, const std::string& loser) const {
    auto it = edges_.find({index_of(winner), index_of(loser)});
    return it == edges_.end() ? nullptr : &it->second;
  }

  int total_weight() const {
    int total = 0;
    for (const auto& [key, e] : edges_) total += e.weight;
    return total;
  }

  bool operator==(const SeasonNetwork& other) const {
    return teams_ == other.teams_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> teams_;
  std::map<std::string, size_t> index_;
  std::map<std::pair<size_t, size_t>, EdgeData> edges_;
};

inline SeasonNetwork build_network(const SeasonDataset& dataset) {
  if (dataset.games.empty()) throw EmptySeasonError(dataset.season);
  SeasonNetwork net(teams_in(dataset));
  for (const auto& g : dataset.games)
    net.add_win(g.winner(), g.loser(), g.margin_abs());
  return net;
}

// entry [n][t] = weight of edge n -> t (games n won over t)
inline DenseMatrix adjacency_matrix(const SeasonNetwork& network) {
  DenseMatrix m(network.size());
  for (const auto& [key, e] : network.edges())
    m.at(key.first, key.second) = static_cast<double>(e.weight);
  return m;
}

}  // namespace coachrank
