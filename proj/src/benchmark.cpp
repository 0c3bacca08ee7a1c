#include "lqgame/benchmark.hpp"

#include "lqgame/bounds.hpp"

namespace lqgame {

GameSpec benchmark_two_player() {
  GameSpec s;
  s.n = 3;
  s.p = 2;
  s.N = 2;
  s.m = {1, 1};
  s.A = Matrix{{0.3, 0.0, -0.2}, {0.2, 0.4, 0.1}, {-0.2, 0.3, 0.5}};
  s.B = {Matrix{{0.2}, {0.9}, {-0.3}}, Matrix{{0.5}, {0.4}, {0.6}}};
  s.C = Matrix{{0.3, -0.2, 0.5}, {0.4, 0.1, -0.7}};
  s.D = {Matrix{{0.6}, {0.2}}, Matrix{{-0.1}, {0.3}}};
  s.Q = {4.0 * Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)};
  s.R = {{Matrix{{0.7}}, Matrix{{0.1}}}, {Matrix{{0.2}}, Matrix{{0.5}}}};
  s.delta = {0.9, 0.6};
  s.ref = {ReferenceSignal::constant(Vector{{1.0, 1.0}}),
           ReferenceSignal::constant(Vector{{-1.0, -1.0}})};
  return s;
}

GameSpec benchmark_two_player_zero_ref() {
  GameSpec s = benchmark_two_player();
  s.ref = {ReferenceSignal::zero(), ReferenceSignal::zero()};
  return s;
}

Vector benchmark_x1() { return Vector{{-0.353, -1.926, -2.595}}; }

BenchmarkReference benchmark_reference() {
  BenchmarkReference r;
  r.K1 = Matrix{{-0.527, 0.217, 0.075}};
  r.K2 = Matrix{{-0.160, -0.210, 0.306}};
  r.L1 = 1.235;
  r.L2 = -0.401;
  r.J1 = 38.784;
  r.J2 = 17.050;
  return r;
}

std::vector<HorizonSweepPoint> sweep_horizons(const GameSpec& spec, int t_min,
                                              int t_max, const Vector& x1) {
  if (t_min < 1 || t_max < t_min) {
    throw std::invalid_argument("bad horizon range");
  }
  const StationarySolution sol = iterate_to_limit(spec);
  const bool with_bound = spec.zero_references();

  std::vector<HorizonSweepPoint> rows;
  rows.reserve(t_max - t_min + 1);
  // One deep solve covers every T by horizon consistency: the stage
  // (t_max - T + 1) matrices of the t_max-stage game are the first-stage
  // matrices of the T-stage game.
  const FiniteHorizonSolution deep = backward_solve(spec, t_max);
  for (int T = t_min; T <= t_max; ++T) {
    HorizonSweepPoint row;
    row.T = T;
    const StageGains& g1 = deep.gains[t_max - T];
    row.K1 = g1.K;
    row.L1 = g1.L;
    try {
      row.costs = cost_gap(spec, sol, std::vector<int>(spec.N, T), x1);
    } catch (const SolverError&) {
      // Short horizons can close the loop unstably; report the gap as NaN.
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.costs.assign(spec.N, CostGap{nan, nan, nan});
    }
    if (with_bound) {
      const BoundReport rep =
          gap_bound(spec, sol, std::vector<int>(spec.N, T), x1);
      if (rep.applicable) row.bound = rep.bound;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lqgame
