#ifndef LQGAME_BENCHMARK_HPP
#define LQGAME_BENCHMARK_HPP

#include "lqgame/game_spec.hpp"
#include "lqgame/simulate.hpp"

namespace lqgame {

/// Built-in two-player three-state benchmark game with constant references
/// and heterogeneous discounts, with published reference values for the
/// limiting equilibrium (see benchmark_reference()).
GameSpec benchmark_two_player();

/// Same game with both references set to zero.
GameSpec benchmark_two_player_zero_ref();

/// The benchmark initial state.
Vector benchmark_x1();

/// Published reference values for the benchmark game, printed to three
/// decimals at the source.
struct BenchmarkReference {
  Matrix K1, K2;  // 1 x 3 limiting gains
  double L1, L2;  // limiting offsets
  double J1, J2;  // equilibrium costs from benchmark_x1()
};
BenchmarkReference benchmark_reference();

/// One row per horizon T in [t_min, t_max]: first-stage matrices of the
/// T-stage game and receding-horizon vs. limiting costs (plus the certified
/// bound on zero-reference games).
struct HorizonSweepPoint {
  int T;
  std::vector<Matrix> K1;
  std::vector<Vector> L1;
  std::vector<CostGap> costs;
  std::vector<double> bound;  // empty when the bound does not apply
};
std::vector<HorizonSweepPoint> sweep_horizons(const GameSpec& spec, int t_min,
                                              int t_max, const Vector& x1);

}  // namespace lqgame

#endif
