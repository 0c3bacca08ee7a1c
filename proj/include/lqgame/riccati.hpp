#ifndef LQGAME_RICCATI_HPP
#define LQGAME_RICCATI_HPP

#include <vector>

#include "lqgame/errors.hpp"
#include "lqgame/game_spec.hpp"

namespace lqgame {

/// Default condition-number ceiling on H before a stage counts as singular.
inline constexpr double kCondMax = 1e12;

/// Feedback matrices of one stage: u^i = K[i] x + L[i].
struct StageGains {
  std::vector<Matrix> K;  // m[i] x n
  std::vector<Vector> L;  // m[i]
};

/// Per-player quadratic value parameters: V^i(x) = 1/2 x'P[i]x + S[i]'x + w[i].
struct StageValues {
  std::vector<Matrix> P;  // n x n symmetric
  std::vector<Vector> S;  // n
  std::vector<double> w;

  static StageValues zeros(const GameSpec& spec);
};

/// Closed-loop pieces of one stage, recomputable from the gains:
/// F = A + sum B[j]K[j], G = C + sum D[j]K[j], drift = sum B[j]L[j],
/// offset[i] = sum D[j]L[j] - l^i.
struct StageAssembly {
  Matrix F;  // n x n
  Matrix G;  // p x n
  Vector drift;                 // n
  std::vector<Vector> offset;   // p, per player
};

StageAssembly assemble_closed_loop(const GameSpec& spec,
                                   const StageGains& gains,
                                   const std::vector<Vector>& l_t);

/// Coefficient matrix of the stage linear system, affine in the stacked
/// next-stage value matrices: feedthrough-cost block + diag(R^{ii}) +
/// discounted B-weighted P block. Size total_m x total_m.
Matrix assemble_H(const GameSpec& spec, const std::vector<Matrix>& P_next);

/// Right-hand side for the gains K (total_m x n).
Matrix assemble_g(const GameSpec& spec, const std::vector<Matrix>& P_next);

/// Right-hand side for the offsets L (total_m), which also carries the
/// reference term.
Vector assemble_g_tilde(const GameSpec& spec, const std::vector<Vector>& S_next,
                        const std::vector<Vector>& l_t);

struct StageResult {
  StageGains gains;
  StageValues values;
  double cond_H = 0.0;
};

/// One backward step of the coupled Riccati recursion. `t` is only used for
/// error reporting. Throws SingularHError when cond(H) >= cond_max.
StageResult stage_step(const GameSpec& spec, int t, const StageValues& next,
                       const std::vector<Vector>& l_t,
                       double cond_max = kCondMax);

/// The unique feedback Nash equilibrium of a T-stage game. Index 0 holds
/// stage 1. Terminal convention: P_{T+1} = 0, S_{T+1} = 0, w_{T+1} = 0.
struct FiniteHorizonSolution {
  int T = 0;
  std::vector<StageGains> gains;    // size T
  std::vector<StageValues> values;  // size T
  std::vector<double> cond_H;       // size T
};

FiniteHorizonSolution backward_solve(const GameSpec& spec, int T,
                                     double cond_max = kCondMax);

/// Continuation value 1/2 x'P_t[i] x + S_t[i]'x + w_t[i]; zero at t = T+1.
/// t is 1-based; throws std::out_of_range outside 1..T+1.
double value_at(const FiniteHorizonSolution& sol, int t, int player,
                const Vector& x);

/// Largest relative residual of the defining stage equations over all stages
/// and players, from substituting the computed matrices back in.
double finite_horizon_residual(const GameSpec& spec,
                               const FiniteHorizonSolution& sol);

}  // namespace lqgame

#endif
