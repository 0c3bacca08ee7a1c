#include <doctest.h>

#include <cmath>

#include "lqgame/benchmark.hpp"
#include "lqgame/bounds.hpp"
#include "test_support.hpp"

using namespace lqgame;

TEST_CASE("M at small contraction factors") {
  // (t-1) rho^(t-2) peaks at t = 2 (value 1) whenever rho <= 1/2.
  CHECK(compute_M(0.0, 0.0, 0.0) == 1.0);
  CHECK(compute_M(0.5, 0.0, 0.0) == 1.0);
  CHECK(compute_M(0.3, 0.2, 0.5) == 1.0);  // rho = 0.4
}

TEST_CASE("M matches direct enumeration at rho = 0.9") {
  const double rho = 0.9;
  double best = 0.0;
  for (int t = 2; t <= 2000; ++t) {
    best = std::max(best, (t - 1) * std::pow(rho, t - 2));
  }
  CHECK(compute_M(rho, 0.0, 0.0) == doctest::Approx(best).epsilon(1e-12));
  // Continuous maximizer t* = 2 - 1/ln(rho): the integer max is sandwiched by
  // the continuous one evaluated at floor/ceil.
  const double tc = 2.0 - 1.0 / std::log(rho);
  const double lo = (std::floor(tc) - 1) * std::pow(rho, std::floor(tc) - 2);
  const double hi = (std::ceil(tc) - 1) * std::pow(rho, std::ceil(tc) - 2);
  CHECK(compute_M(rho, 0.0, 0.0) >= std::max(lo, hi) - 1e-12);
}

TEST_CASE("M is unbounded at and beyond rho = 1") {
  CHECK_THROWS_AS(compute_M(1.0, 0.0, 0.0), InapplicableError);
  CHECK_THROWS_AS(compute_M(0.8, 1.0, 0.5), InapplicableError);  // rho = 1.3
}

TEST_CASE("M grows with rho") {
  double prev = 0.0;
  for (double rho = 0.1; rho < 0.995; rho += 0.05) {
    const double m = compute_M(rho, 0.0, 0.0);
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("bound report constants are internally consistent") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution sol = iterate_to_limit(s);
  const Vector x1 = benchmark_x1();
  const BoundReport rep = gap_bound(s, sol, {10, 10}, x1);
  REQUIRE(rep.applicable);

  double b = 0.0, d = 0.0;
  for (int i = 0; i < s.N; ++i) {
    b += spectral_norm(s.B[i]);
    d += spectral_norm(s.D[i]);
  }
  CHECK(rep.b == doctest::Approx(b).epsilon(1e-12));
  CHECK(rep.d == doctest::Approx(d).epsilon(1e-12));
  CHECK(rep.lambda == doctest::Approx(sol.lambda).epsilon(1e-12));
  CHECK(rep.M ==
        doctest::Approx(compute_M(rep.lambda, rep.b, rep.epsilon)).epsilon(1e-12));

  const FiniteHorizonSolution fin = backward_solve(s, 10);
  double eps = 0.0;
  for (int i = 0; i < s.N; ++i) {
    eps = std::max(eps, spectral_norm(fin.gains[0].K[i] - sol.K[i]));
  }
  CHECK(rep.epsilon == doctest::Approx(eps).epsilon(1e-12));

  const double gnorm = spectral_norm(sol.G);
  const double g_expect =
      (gnorm + rep.d * rep.epsilon) * rep.M * rep.b * rep.epsilon +
      rep.d * rep.epsilon;
  CHECK(rep.g_eps == doctest::Approx(g_expect).epsilon(1e-12));

  for (int i = 0; i < s.N; ++i) {
    CHECK(rep.theta[i] == doctest::Approx(rep.G1[i] + rep.G2[i]).epsilon(1e-12));
    CHECK(rep.bound[i] ==
          doctest::Approx(0.5 * x1.squaredNorm() * rep.theta[i] /
                          (1.0 - s.delta[i]))
              .epsilon(1e-12));
    CHECK(rep.bound[i] >= 0.0);
  }
}

TEST_CASE("bound dominates the measured gap on the benchmark") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution sol = iterate_to_limit(s);
  const Vector x1 = benchmark_x1();
  const std::vector<int> horizons = {10, 10};
  const BoundReport rep = gap_bound(s, sol, horizons, x1);
  REQUIRE(rep.applicable);
  const std::vector<CostGap> gaps = cost_gap(s, sol, horizons, x1);
  for (int i = 0; i < s.N; ++i) {
    CHECK(std::abs(gaps[i].gap) <= rep.bound[i] + 1e-12);
  }
}

TEST_CASE("bound shrinks toward zero as the horizon grows") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution sol = iterate_to_limit(s);
  const Vector x1 = benchmark_x1();
  const BoundReport r10 = gap_bound(s, sol, {10, 10}, x1);
  const BoundReport r25 = gap_bound(s, sol, {25, 25}, x1);
  const BoundReport r50 = gap_bound(s, sol, {50, 50}, x1);
  REQUIRE(r10.applicable);
  REQUIRE(r50.applicable);
  for (int i = 0; i < s.N; ++i) {
    CHECK(r25.bound[i] <= r10.bound[i]);
    CHECK(r50.bound[i] <= r25.bound[i]);
    CHECK(r50.bound[i] < 1e-6);
  }
}

TEST_CASE("inapplicable reports carry the flag instead of throwing") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution sol = iterate_to_limit(s);
  // T = 1 gains sit far from the limit; lambda + b*eps exceeds 1 here.
  const BoundReport rep = gap_bound(s, sol, {1, 1}, benchmark_x1());
  if (!rep.applicable) {
    CHECK(std::isinf(rep.bound[0]));
    CHECK(std::isinf(rep.bound[1]));
  } else {
    CHECK(rep.lambda + rep.b * rep.epsilon < 1.0);
  }
}

TEST_CASE("gap bound rejects reference-tracking games") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution sol = iterate_to_limit(s);
  CHECK_THROWS_AS(gap_bound(s, sol, {10, 10}, benchmark_x1()),
                  std::invalid_argument);
}

TEST_CASE("theta scales like a cubic in epsilon at frozen M") {
  // With M held at its eps -> 0 value, g is a quadratic in eps with no
  // constant term, G1 is a quadratic, and G2 a quadratic, so theta has a
  // vanishing constant term: theta(eps) / eps stays bounded as eps -> 0.
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution sol = iterate_to_limit(s);
  const Vector x1 = benchmark_x1();
  const BoundReport fine = gap_bound(s, sol, {40, 40}, x1);
  const BoundReport finer = gap_bound(s, sol, {60, 60}, x1);
  REQUIRE(fine.applicable);
  REQUIRE(finer.applicable);
  REQUIRE(finer.epsilon < fine.epsilon);
  for (int i = 0; i < s.N; ++i) {
    const double r1 = fine.theta[i] / fine.epsilon;
    const double r2 = finer.theta[i] / finer.epsilon;
    // Linear leading order: the ratio converges rather than blowing up.
    CHECK(r2 <= r1 * (1.0 + 1e-6) + 1e-9);
  }
}
