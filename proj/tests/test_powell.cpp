#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace coachrank;

namespace {

PowellConfig tight_config() {
  PowellConfig c;
  c.x_tol = 1e-10;
  c.f_tol = 1e-14;
  c.max_iters = 1000;
  c.max_line_iters = 200;
  return c;
}

double rosenbrock(const std::vector<double>& v) {
  const double x = v[0], y = v[1];
  return (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x);
}

double booth(const std::vector<double>& v) {
  const double x = v[0], y = v[1];
  return (x + 2.0 * y - 7.0) * (x + 2.0 * y - 7.0) +
         (2.0 * x + y - 5.0) * (2.0 * x + y - 5.0);
}

}  // namespace

TEST_CASE("powell: separable quadratic") {
  auto f = [](const std::vector<double>& v) {
    return (v[0] - 1.0) * (v[0] - 1.0) + (v[1] - 2.0) * (v[1] - 2.0);
  };
  PowellResult r = powell_minimize(f, {0.0, 0.0}, tight_config());
  CHECK(r.converged);
  CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.x[1] == Catch::Approx(2.0).margin(1e-6));
}

TEST_CASE("powell: Rosenbrock valley") {
  PowellResult r = powell_minimize(rosenbrock, {-1.2, 1.0}, tight_config());
  CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-4));
  CHECK(r.x[1] == Catch::Approx(1.0).margin(1e-4));
}

TEST_CASE("powell: Booth function") {
  PowellResult r = powell_minimize(booth, {0.0, 0.0}, tight_config());
  CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.x[1] == Catch::Approx(3.0).margin(1e-6));
}

TEST_CASE("powell: trace is non-increasing and ends at the final cost") {
  PowellResult r = powell_minimize(rosenbrock, {-1.2, 1.0}, tight_config());
  REQUIRE_FALSE(r.trace.empty());
  for (size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i] <= r.trace[i - 1]);
  CHECK(r.trace.back() == r.f);
  CHECK(static_cast<int>(r.trace.size()) == r.iterations);
}

TEST_CASE("powell: quadratic exactness in n+1 sweeps for dims 2..5") {
  Rng rng(77);
  for (int dim = 2; dim <= 5; ++dim) {
    for (int rep = 0; rep < 3; ++rep) {
      // PD quadratic with moderate conditioning: Q = B^T B + 0.5 I
      std::vector<std::vector<double>> b(dim, std::vector<double>(dim));
      for (auto& row : b)
        for (auto& v : row) v = rng.uniform(-1.0, 1.0);
      std::vector<double> center(dim);
      for (auto& v : center) v = rng.uniform(-2.0, 2.0);
      auto f = [&](const std::vector<double>& v) {
        double total = 0.0;
        for (int i = 0; i < dim; ++i) {
          double row = 0.0;
          for (int j = 0; j < dim; ++j) row += b[i][j] * (v[j] - center[j]);
          total += row * row;
        }
        for (int j = 0; j < dim; ++j)
          total += 0.5 * (v[j] - center[j]) * (v[j] - center[j]);
        return total;
      };
      PowellConfig c;
      c.x_tol = 1e-12;
      c.f_tol = 1e-15;
      c.max_iters = dim + 1;
      c.max_line_iters = 400;
      PowellResult r = powell_minimize(f, std::vector<double>(dim, 0.0), c);
      CHECK(r.f < 1e-16);
    }
  }
}

TEST_CASE("powell: non-finite objective is reported with the point") {
  auto f = [](const std::vector<double>& v) {
    return v[0] > 1.0 ? std::numeric_limits<double>::quiet_NaN()
                      : (v[0] - 5.0) * (v[0] - 5.0);
  };
  PowellConfig c = tight_config();
  CHECK_THROWS_AS(powell_minimize(f, {0.0}, c), NonFiniteObjectiveError);
  // non-finite start
  auto g = [](const std::vector<double>& v) { return v[0] * v[0]; };
  CHECK_THROWS_AS(
      powell_minimize(g, {std::numeric_limits<double>::infinity()}, c),
      NonFiniteObjectiveError);
}

TEST_CASE("powell: one-dimensional problems work") {
  auto f = [](const std::vector<double>& v) {
    return (v[0] + 4.0) * (v[0] + 4.0) + 7.0;
  };
  PowellResult r = powell_minimize(f, {10.0}, tight_config());
  CHECK(r.x[0] == Catch::Approx(-4.0).margin(1e-6));
  CHECK(r.f == Catch::Approx(7.0).margin(1e-10));
}

TEST_CASE("powell: deterministic for identical inputs") {
  auto r1 = powell_minimize(rosenbrock, {-1.2, 1.0}, tight_config());
  auto r2 = powell_minimize(rosenbrock, {-1.2, 1.0}, tight_config());
  CHECK(r1.x == r2.x);
  CHECK(r1.f == r2.f);
  CHECK(r1.trace == r2.trace);
}
