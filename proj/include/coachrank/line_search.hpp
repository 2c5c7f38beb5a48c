#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "coachrank/errors.hpp"

namespace coachrank {

struct Bracket {
  double a = 0.0;
  double m = 0.0;
  double b = 0.0;
};

namespace detail {

constexpr double kGolden = 1.6180339887498949;
constexpr double kCGold = 0.3819660112501051;
constexpr double kZEps = 1e-12;
constexpr double kTiny = 1e-25;

}  // namespace detail

// Expands from `step` by the golden ratio until f turns upward, starting at
// t = 0. Returns nullopt when no bracket forms within `max_expansions`
// (monotone or flat along the direction).
template <typename F>
std::optional<Bracket> bracket_minimum(F&& f, double step = 0.1,
                                       int max_expansions = 50) {
  const double f0 = f(0.0);
  bool forward = true;
  double t1 = step;
  double f1 = f(t1);
  if (f1 >= f0) {
    const double fneg = f(-step);
    if (fneg >= f0) return Bracket{-step, 0.0, step};
    forward = false;
    t1 = -step;
    f1 = fneg;
  }
  double t0 = 0.0;
  double f_best = f1;
  for (int i = 0; i < max_expansions; ++i) {
    const double t2 = t1 + detail::kGolden * (t1 - t0);
    const double f2 = f(t2);
    if (f2 > f_best)
      return forward ? Bracket{t0, t1, t2} : Bracket{t2, t1, t0};
    t0 = t1;
    t1 = t2;
    f_best = f2;
  }
  return std::nullopt;
}

// Brent's method: golden-section with parabolic interpolation acceptance.
// `bracket` must satisfy a < m < b with f(m) below both ends; `tol` is the
// relative x tolerance. Returns (argmin, min).
template <typename F>
std::pair<double, double> brent_line_min(F&& f, Bracket bracket, double tol,
                                         int max_iters) {
  if (!(bracket.a < bracket.m && bracket.m < bracket.b))
    throw InvalidBracketError("bracket endpoints not ordered a < m < b");
  const double fa = f(bracket.a);
  const double fb = f(bracket.b);
  double fx = f(bracket.m);
  if (fx > fa || fx > fb)
    throw InvalidBracketError("bracket midpoint is not below both endpoints");

  double lo = bracket.a, hi = bracket.b;
  double x = bracket.m, w = x, v = x;
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < max_iters; ++iter) {
    const double xm = 0.5 * (lo + hi);
    const double tol1 = tol * std::abs(x) + detail::kZEps;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (hi - lo)) break;

    bool use_golden = true;
    if (std::abs(e) > tol1) {
      // parabola through (x, w, v)
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (lo - x) &&
          p < q * (hi - x)) {
        d = p / q;
        const double u = x + d;
        if (u - lo < tol2 || hi - u < tol2)
          d = std::copysign(tol1, xm - x);
        use_golden = false;
      }
    }
    if (use_golden) {
      e = (x >= xm) ? lo - x : hi - x;
      d = detail::kCGold * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) lo = x; else hi = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) lo = u; else hi = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

}  // namespace coachrank
