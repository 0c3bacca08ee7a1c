#ifndef LQGAME_SIMULATE_HPP
#define LQGAME_SIMULATE_HPP

#include <vector>

#include "lqgame/stationary.hpp"

namespace lqgame {

/// Stage-invariant affine strategies u^i = gain[i] x + offset[i].
struct AffineStrategyProfile {
  enum class Provenance { RecedingHorizon, Stationary, Custom };

  std::vector<Matrix> gain;    // m[i] x n
  std::vector<Vector> offset;  // m[i]
  Provenance provenance = Provenance::Custom;
  std::vector<int> horizons;   // RecedingHorizon only
};

/// "Look T^i ahead, move one": player i plays the first-stage matrices of the
/// T^i-stage game. Requires time-invariant references.
AffineStrategyProfile make_receding_strategy(const GameSpec& spec,
                                             const std::vector<int>& horizons);

AffineStrategyProfile stationary_profile(const StationarySolution& sol);

/// Rollout stop rule: either a fixed number of stages or run until every
/// player's certified geometric tail bound drops below `tail_tol`.
struct RolloutStop {
  enum class Mode { FixedLength, TailTol };
  Mode mode = Mode::FixedLength;
  int length = 1;
  double tail_tol = 1e-8;

  static RolloutStop fixed_length(int len) { return {Mode::FixedLength, len, 0.0}; }
  static RolloutStop tail_tol_stop(double tol) { return {Mode::TailTol, 0, tol}; }
};

inline constexpr double kDefaultTailTol = 1e-8;

struct Trajectory {
  std::vector<Vector> x;  // states x_1..x_tau
  std::vector<Vector> y;  // outputs
  std::vector<Vector> u;  // stacked inputs (total_m)
  std::vector<std::vector<double>> stage_cost;  // [player][stage], discounted
  std::vector<double> total;       // truncated discounted totals
  std::vector<double> tail_bound;  // certified bound on the discarded cost
  int length = 0;
};

/// Simulates the closed loop and accumulates discounted costs. In tail-tol
/// mode requires a contractive closed loop (and throws UnstableClosedLoopError
/// otherwise); a unit discount with nonvanishing stationary stage cost throws
/// DivergentCostError.
Trajectory rollout(const GameSpec& spec, const AffineStrategyProfile& profile,
                   const Vector& x1, const RolloutStop& stop);

/// Per-player infinite-horizon cost 1/2 x1' Pi x1 from the closed-loop value
/// fixed point. Zero references only; requires delta * ||F||^2 < 1.
std::vector<double> closed_form_cost(const GameSpec& spec,
                                     const AffineStrategyProfile& profile,
                                     const Vector& x1);

struct CostGap {
  double approx = 0.0;  // receding-horizon cost
  double limit = 0.0;   // limiting-equilibrium cost
  double gap = 0.0;
};

/// Costs under the receding-horizon profile vs. the limiting equilibrium,
/// by closed form (zero references) or certified rollout (constant ones).
std::vector<CostGap> cost_gap(const GameSpec& spec,
                              const std::vector<int>& horizons,
                              const Vector& x1);

/// Same, against a precomputed limit (avoids re-iterating per horizon tuple).
std::vector<CostGap> cost_gap(const GameSpec& spec,
                              const StationarySolution& sol,
                              const std::vector<int>& horizons,
                              const Vector& x1);

}  // namespace lqgame

#endif
