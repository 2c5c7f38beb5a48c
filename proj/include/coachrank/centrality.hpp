#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "coachrank/errors.hpp"
#include "coachrank/network.hpp"

namespace coachrank {

// Per-team eigenvector centrality for one season; this is the team-skill
// input of the fitting stage. Scores are unit Euclidean norm and strictly
// positive whenever epsilon > 0.
struct CentralityVector {
  std::map<std::string, double> scores;
  double eigenvalue = 0.0;
  int iterations = 0;
  bool converged = false;

  double at(const std::string& team) const {
    auto it = scores.find(team);
    if (it == scores.end()) throw Error("no centrality score for team: " + team);
    return it->second;
  }

  double max_score() const {
    double m = 0.0;
    for (const auto& [team, s] : scores) m = std::max(m, s);
    return m;
  }
};

// Thrown by callers that require convergence; carries the best iterate so
// the computation can be retried with a larger epsilon.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& msg, CentralityVector best)
      : Error(msg), best_(std::move(best)) {}
  const CentralityVector& best_iterate() const { return best_; }

 private:
  CentralityVector best_;
};

constexpr double kDefaultEpsilon = 1e-4;
constexpr double kDefaultCentralityTol = 1e-10;
constexpr int kDefaultCentralityMaxIter = 10000;

// Power iteration on the damped matrix A' = A + epsilon * ones. Raw season
// digraphs are often acyclic or disconnected, where the principal
// eigenvector is degenerate and the iteration stalls or dies; epsilon > 0
// makes the matrix positive, so a unique strictly positive eigenvector
// exists. A non-converged result still carries the best iterate so the
// caller can retry with a larger epsilon.
inline CentralityVector eigenvector_centrality(
    const SeasonNetwork& network, double epsilon = kDefaultEpsilon,
    double tol = kDefaultCentralityTol, int max_iter = kDefaultCentralityMaxIter) {
  const size_t n = network.size();
  if (n < 2)
    throw DegenerateNetworkError("centrality needs at least 2 teams, got " +
                                 std::to_string(n));

  DenseMatrix a = adjacency_matrix(network);
  for (auto& v : a.a) v += epsilon;

  // deterministic start: uniform 1/sqrt(n)
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n, 0.0);

  CentralityVector result;
  int iter = 0;
  // Rounding noise is amplified by 1/(spectral gap), so near-degenerate
  // matrices settle into a floating-point limit cycle above very tight
  // tolerances; once the running delta minimum stops improving there is
  // nothing left to gain.
  constexpr int kStallWindow = 2000;
  double delta_min = std::numeric_limits<double>::infinity();
  int last_improvement = 0;
  for (; iter < max_iter; ++iter) {
    for (size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      const double* row = &a.a[i * n];
      for (size_t j = 0; j < n; ++j) sum += row[j] * x[j];
      next[i] = sum;
    }
    double norm = 0.0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;  // nilpotent A, epsilon = 0

    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      delta = std::max(delta, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (delta < tol) {
      result.converged = true;
      ++iter;
      break;
    }
    if (delta < delta_min) {
      delta_min = delta;
      last_improvement = iter;
    } else if (iter - last_improvement >= kStallWindow) {
      ++iter;
      break;
    }
  }

  // Rayleigh quotient x'Ax with ||x|| = 1
  double lambda = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    const double* row = &a.a[i * n];
    for (size_t j = 0; j < n; ++j) sum += row[j] * x[j];
    lambda += x[i] * sum;
  }

  result.eigenvalue = lambda;
  result.iterations = iter;
  const auto& teams = network.teams();
  for (size_t i = 0; i < n; ++i) result.scores.emplace(teams[i], x[i]);
  return result;
}

}  // namespace coachrank
