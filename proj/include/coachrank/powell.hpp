#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "coachrank/errors.hpp"
#include "coachrank/line_search.hpp"

namespace coachrank {

struct PowellConfig {
  double x_tol = 1e-8;       // per-coordinate convergence tolerance
  double f_tol = 1e-10;      // relative cost-decrease tolerance
  int max_iters = 200;       // outer direction-set sweeps
  int max_line_iters = 100;  // Brent iterations per line search
  int restarts = 3;          // random restarts beyond the z = 0 start
  std::uint64_t seed = 0;    // RNG seed for restart starting points
  double bounds_log_lo = -2.3;  // lower bound on log-skill (skill ~ 0.1)
  double bounds_log_hi = 2.3;   // upper bound on log-skill (skill ~ 10)

  void validate() const {
    if (!(x_tol > 0.0) || !(f_tol > 0.0))
      throw ConfigError("optimizer tolerances must be > 0");
    if (max_iters < 1 || max_line_iters < 1)
      throw ConfigError("optimizer iteration limits must be >= 1");
    if (restarts < 0) throw ConfigError("optimizer restarts must be >= 0");
    if (!(bounds_log_lo < bounds_log_hi))
      throw ConfigError("optimizer bounds_log must satisfy lower < upper");
  }
};

struct PowellResult {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> trace;  // objective after each outer sweep; non-increasing
  int iterations = 0;         // completed sweeps
  bool converged = false;
};

namespace detail {

template <typename F>
class FiniteGuard {
 public:
  explicit FiniteGuard(F& f) : f_(f) {}
  double operator()(const std::vector<double>& x) const {
    const double v = f_(x);
    if (!std::isfinite(v)) throw NonFiniteObjectiveError(x);
    return v;
  }

 private:
  F& f_;
};

// Minimizes along `direction` from `point`; bracket by golden expansion from
// step 0.1, then Brent. Never returns a worse point than the input; when no
// bracket forms the point is left untouched.
template <typename F>
std::pair<std::vector<double>, double> line_minimize(
    const F& f, std::vector<double> point, double f_point,
    const std::vector<double>& direction, double tol, int max_iters) {
  auto along = [&](double t) {
    std::vector<double> p(point.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = point[i] + t * direction[i];
    return f(p);
  };
  auto bracket = bracket_minimum(along, 0.1, 50);
  if (!bracket) return {std::move(point), f_point};
  auto [t, ft] = brent_line_min(along, *bracket, tol, max_iters);
  if (ft > f_point) return {std::move(point), f_point};  // numeric no-gain guard
  for (size_t i = 0; i < point.size(); ++i) point[i] += t * direction[i];
  return {std::move(point), ft};
}

// |det| of a set of unit-norm directions via in-place Gaussian elimination;
// 0 means the set has collapsed into a subspace.
inline double direction_set_determinant(std::vector<std::vector<double>> dirs) {
  const size_t n = dirs.size();
  double det = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t row = col + 1; row < n; ++row)
      if (std::abs(dirs[row][col]) > std::abs(dirs[pivot][col])) pivot = row;
    if (dirs[pivot][col] == 0.0) return 0.0;
    if (pivot != col) std::swap(dirs[pivot], dirs[col]);
    det *= dirs[col][col];
    for (size_t row = col + 1; row < n; ++row) {
      const double factor = dirs[row][col] / dirs[col][col];
      for (size_t k = col; k < n; ++k) dirs[row][k] -= factor * dirs[col][k];
    }
  }
  return std::abs(det);
}

constexpr double kDirectionDetFloor = 1e-8;

}  // namespace detail

// Powell's conjugate-direction minimization. Starts from the coordinate
// basis; each sweep line-minimizes along every direction, then drops the
// oldest direction and appends the normalized sweep displacement -- the
// update that makes the trailing directions mutually conjugate on a
// quadratic, so an n-dimensional quadratic is solved in n sweeps of exact
// line searches. Conditioning is guarded explicitly: if the determinant of
// the direction set collapses the basis is reset to coordinates.
template <typename F>
PowellResult powell_minimize(F f, std::vector<double> x0,
                             const PowellConfig& config) {
  config.validate();
  const size_t n = x0.size();
  if (n == 0) throw Error("powell_minimize needs at least one variable");
  for (double v : x0)
    if (!std::isfinite(v)) throw NonFiniteObjectiveError(x0);

  detail::FiniteGuard<F> guard(f);

  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  PowellResult result;
  result.x = std::move(x0);
  result.f = guard(result.x);

  for (int sweep = 0; sweep < config.max_iters; ++sweep) {
    const std::vector<double> p0 = result.x;
    const double f0 = result.f;

    for (size_t i = 0; i < n; ++i) {
      auto [p, fp] = detail::line_minimize(guard, std::move(result.x), result.f,
                                           dirs[i], config.x_tol,
                                           config.max_line_iters);
      result.x = std::move(p);
      result.f = fp;
    }

    std::vector<double> displacement(n);
    double disp_norm2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      displacement[i] = result.x[i] - p0[i];
      disp_norm2 += displacement[i] * displacement[i];
    }
    if (disp_norm2 > 0.0 && n > 1) {
      const double norm = std::sqrt(disp_norm2);
      for (double& v : displacement) v /= norm;
      auto [p, fp] = detail::line_minimize(guard, std::move(result.x), result.f,
                                           displacement, config.x_tol,
                                           config.max_line_iters);
      result.x = std::move(p);
      result.f = fp;
      for (size_t i = 0; i + 1 < n; ++i) dirs[i] = std::move(dirs[i + 1]);
      dirs[n - 1] = std::move(displacement);
      if (detail::direction_set_determinant(dirs) < detail::kDirectionDetFloor) {
        for (size_t i = 0; i < n; ++i) {
          std::fill(dirs[i].begin(), dirs[i].end(), 0.0);
          dirs[i][i] = 1.0;
        }
      }
    }

    result.trace.push_back(result.f);
    result.iterations = sweep + 1;

    if (2.0 * (f0 - result.f) <=
        config.f_tol * (std::abs(f0) + std::abs(result.f)) + detail::kTiny) {
      result.converged = true;
      break;
    }
    double max_move = 0.0;
    for (size_t i = 0; i < n; ++i)
      max_move = std::max(max_move, std::abs(result.x[i] - p0[i]));
    if (max_move < config.x_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace coachrank
