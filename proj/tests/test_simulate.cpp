#include <doctest.h>

#include "lqgame/benchmark.hpp"
#include "lqgame/simulate.hpp"
#include "test_support.hpp"

using namespace lqgame;

TEST_CASE("long receding horizons approach the stationary profile") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  const AffineStrategyProfile rh = make_receding_strategy(s, {50, 50});
  const AffineStrategyProfile st = stationary_profile(lim);
  for (int i = 0; i < s.N; ++i) {
    CHECK((rh.gain[i] - st.gain[i]).norm() < 1e-6);
    CHECK((rh.offset[i] - st.offset[i]).norm() < 1e-6);
  }
}

TEST_CASE("unit horizons reproduce the single-stage game") {
  const GameSpec s = benchmark_two_player();
  const AffineStrategyProfile rh = make_receding_strategy(s, {1, 1});
  const StageResult one =
      stage_step(s, 0, StageValues::zeros(s), s.references_at(1));
  for (int i = 0; i < s.N; ++i) {
    CHECK(rh.gain[i] == one.gains.K[i]);
    CHECK(rh.offset[i] == one.gains.L[i]);
  }
}

TEST_CASE("heterogeneous horizons pick each player's own stage-1 matrices") {
  const GameSpec s = benchmark_two_player();
  const AffineStrategyProfile rh = make_receding_strategy(s, {3, 7});
  const FiniteHorizonSolution t3 = backward_solve(s, 3);
  const FiniteHorizonSolution t7 = backward_solve(s, 7);
  CHECK(rh.gain[0] == t3.gains[0].K[0]);
  CHECK(rh.offset[0] == t3.gains[0].L[0]);
  CHECK(rh.gain[1] == t7.gains[0].K[1]);
  CHECK(rh.offset[1] == t7.gains[0].L[1]);
  CHECK(rh.provenance == AffineStrategyProfile::Provenance::RecedingHorizon);
}

TEST_CASE("rollout from the origin of a zero-reference game costs nothing") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution lim = iterate_to_limit(s);
  const Trajectory traj = rollout(s, stationary_profile(lim),
                                  Vector::Zero(3), RolloutStop::fixed_length(20));
  CHECK(traj.length == 20);
  CHECK(traj.total[0] == 0.0);
  CHECK(traj.total[1] == 0.0);
  for (const Vector& x : traj.x) CHECK(x.norm() == 0.0);
}

TEST_CASE("benchmark rollout reproduces the published equilibrium costs") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  const Trajectory traj = rollout(s, stationary_profile(lim), benchmark_x1(),
                                  RolloutStop::tail_tol_stop(1e-10));
  const BenchmarkReference ref = benchmark_reference();
  CHECK(traj.total[0] + traj.tail_bound[0] >= ref.J1 - 5e-3);
  CHECK(traj.total[0] <= ref.J1 + 5e-3);
  CHECK(std::abs(traj.total[0] - ref.J1) < 5e-3);
  CHECK(std::abs(traj.total[1] - ref.J2) < 5e-3);
}

TEST_CASE("two-stage rollout matches a hand-summed cost") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  const AffineStrategyProfile prof = stationary_profile(lim);
  const Vector x1 = benchmark_x1();
  const Trajectory traj = rollout(s, prof, x1, RolloutStop::fixed_length(2));
  REQUIRE(traj.length == 2);

  double expect[2] = {0.0, 0.0};
  Vector x = x1;
  double disc[2] = {1.0, 1.0};
  for (int t = 1; t <= 2; ++t) {
    std::vector<Vector> u(s.N);
    Vector y = s.C * x;
    for (int j = 0; j < s.N; ++j) {
      u[j] = prof.gain[j] * x + prof.offset[j];
      y += s.D[j] * u[j];
    }
    for (int i = 0; i < s.N; ++i) {
      const Vector e = y - s.ref[i].at(t, s.p);
      double c = 0.5 * e.dot(s.Q[i] * e);
      for (int j = 0; j < s.N; ++j) c += 0.5 * u[j].dot(s.R[i][j] * u[j]);
      expect[i] += disc[i] * c;
      disc[i] *= s.delta[i];
    }
    Vector xn = s.A * x;
    for (int j = 0; j < s.N; ++j) xn += s.B[j] * u[j];
    x = xn;
  }
  CHECK(traj.total[0] == doctest::Approx(expect[0]).epsilon(1e-12));
  CHECK(traj.total[1] == doctest::Approx(expect[1]).epsilon(1e-12));
}

TEST_CASE("rollout states satisfy the dynamics exactly") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  const AffineStrategyProfile prof = stationary_profile(lim);
  const Trajectory traj =
      rollout(s, prof, benchmark_x1(), RolloutStop::fixed_length(15));
  for (int t = 0; t + 1 < traj.length; ++t) {
    Vector xn = s.A * traj.x[t];
    int off = 0;
    for (int j = 0; j < s.N; ++j) {
      xn += s.B[j] * traj.u[t].segment(off, s.m[j]);
      off += s.m[j];
    }
    CHECK((traj.x[t + 1] - xn).norm() < 1e-12);
  }
}

TEST_CASE("tail-tol rollout stops with a certified small tail") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  const Trajectory a = rollout(s, stationary_profile(lim), benchmark_x1(),
                               RolloutStop::tail_tol_stop(1e-6));
  const Trajectory b = rollout(s, stationary_profile(lim), benchmark_x1(),
                               RolloutStop::tail_tol_stop(1e-7));
  for (int i = 0; i < s.N; ++i) {
    CHECK(a.tail_bound[i] <= 1e-6);
    CHECK(b.tail_bound[i] <= 1e-7);
    // The tighter run refines the truncated total by at most the looser tail.
    CHECK(std::abs(a.total[i] - b.total[i]) <= a.tail_bound[i] + 1e-15);
  }
  CHECK(b.length >= a.length);
}

TEST_CASE("rollout error conditions") {
  GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  AffineStrategyProfile prof = stationary_profile(lim);

  // Unit discount with a nonvanishing stationary stage cost cannot be summed.
  GameSpec u = s;
  u.delta[0] = 1.0;
  CHECK_THROWS_AS(
      rollout(u, prof, benchmark_x1(), RolloutStop::tail_tol_stop(1e-8)),
      DivergentCostError);

  // Expansive closed loop: tail-tol mode refuses to certify.
  AffineStrategyProfile wild = prof;
  wild.gain[0] = Matrix::Constant(1, 3, 5.0);
  CHECK_THROWS_AS(
      rollout(s, wild, benchmark_x1(), RolloutStop::tail_tol_stop(1e-8)),
      UnstableClosedLoopError);
}

TEST_CASE("closed-form cost equals the value quadratic and the rollout") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution lim = iterate_to_limit(s);
  const AffineStrategyProfile prof = stationary_profile(lim);
  const Vector x1 = benchmark_x1();
  const std::vector<double> cf = closed_form_cost(s, prof, x1);
  for (int i = 0; i < s.N; ++i) {
    const double quad = 0.5 * x1.dot(lim.P[i] * x1);
    CHECK(cf[i] == doctest::Approx(quad).epsilon(1e-8));
  }
  const Trajectory traj = rollout(s, prof, x1, RolloutStop::tail_tol_stop(1e-11));
  for (int i = 0; i < s.N; ++i) {
    CHECK(std::abs(cf[i] - traj.total[i]) < 1e-8);
  }
  CHECK(closed_form_cost(s, prof, Vector::Zero(3))[0] == 0.0);
}

TEST_CASE("scalar closed-form cost is a geometric series") {
  // A = 0.5, C = 1, B = D = 0, Q = 1, delta = 0.9, zero gain:
  // J = 1/2 x1^2 sum (0.9/4)^t = 1/2 x1^2 / 0.775.
  GameSpec s;
  s.n = s.p = s.N = 1;
  s.m = {1};
  s.A = Matrix::Constant(1, 1, 0.5);
  s.B = {Matrix::Zero(1, 1)};
  s.C = Matrix::Constant(1, 1, 1.0);
  s.D = {Matrix::Zero(1, 1)};
  s.Q = {Matrix::Constant(1, 1, 1.0)};
  s.R = {{Matrix::Constant(1, 1, 1.0)}};
  s.delta = {0.9};
  s.ref = {ReferenceSignal::zero()};
  AffineStrategyProfile prof;
  prof.gain = {Matrix::Zero(1, 1)};
  prof.offset = {Vector::Zero(1)};
  const Vector x1 = Vector::Constant(1, 2.0);
  CHECK(closed_form_cost(s, prof, x1)[0] ==
        doctest::Approx(0.5 * 4.0 / 0.775).epsilon(1e-10));
}

TEST_CASE("cost gap vanishes when the horizon profile is already stationary") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution lim = iterate_to_limit(s);
  std::vector<CostGap> gaps = cost_gap(s, lim, {200, 200}, benchmark_x1());
  for (const CostGap& g : gaps) {
    CHECK(std::abs(g.gap) < 1e-6);
    CHECK(std::abs(g.approx - g.limit) < 1e-6);
  }
}

TEST_CASE("cost gap agrees with a long brute-force rollout at T = 2") {
  const GameSpec s = benchmark_two_player_zero_ref();
  const StationarySolution lim = iterate_to_limit(s);
  const std::vector<int> horizons = {2, 2};
  const Vector x1 = benchmark_x1();
  const std::vector<CostGap> gaps = cost_gap(s, lim, horizons, x1);
  const AffineStrategyProfile prof = make_receding_strategy(s, horizons);
  const Trajectory traj = rollout(s, prof, x1, RolloutStop::fixed_length(10000));
  for (int i = 0; i < s.N; ++i) {
    CHECK(gaps[i].approx == doctest::Approx(traj.total[i]).epsilon(1e-8));
    CHECK(gaps[i].limit ==
          doctest::Approx(0.5 * x1.dot(lim.P[i] * x1)).epsilon(1e-8));
    CHECK(gaps[i].gap == doctest::Approx(gaps[i].approx - gaps[i].limit));
  }
}

TEST_CASE("cost gap handles constant references via certified rollout") {
  const GameSpec s = benchmark_two_player();
  const std::vector<CostGap> gaps = cost_gap(s, {30, 30}, benchmark_x1());
  const BenchmarkReference ref = benchmark_reference();
  CHECK(std::abs(gaps[0].limit - ref.J1) < 5e-3);
  CHECK(std::abs(gaps[1].limit - ref.J2) < 5e-3);
  CHECK(std::abs(gaps[0].gap) < 1e-2);
}

TEST_CASE("rollout is a pure function of its arguments") {
  const GameSpec s = benchmark_two_player();
  const StationarySolution lim = iterate_to_limit(s);
  const AffineStrategyProfile prof = stationary_profile(lim);
  const Trajectory a =
      rollout(s, prof, benchmark_x1(), RolloutStop::fixed_length(40));
  const Trajectory b =
      rollout(s, prof, benchmark_x1(), RolloutStop::fixed_length(40));
  CHECK(a.length == b.length);
  for (int t = 0; t < a.length; ++t) CHECK(a.x[t] == b.x[t]);
  CHECK(a.total[0] == b.total[0]);
  CHECK(a.total[1] == b.total[1]);
}
