#ifndef LQGAME_STATIONARY_HPP
#define LQGAME_STATIONARY_HPP

#include <vector>

#include "lqgame/riccati.hpp"

namespace lqgame {

/// Per-player Frobenius norms of the algebraic fixed-point residuals,
/// relative to the magnitude of the largest participating term.
struct AlgebraicResiduals {
  std::vector<double> K;  // stationarity of the gains
  std::vector<double> P;  // quadratic value fixed point
  std::vector<double> L;  // affine gain stationarity
  std::vector<double> S;  // affine value fixed point
  std::vector<double> w;

  double max() const;
};

/// Limit of the coupled Riccati recursion started from zero values.
struct StationarySolution {
  std::vector<Matrix> K;  // m[i] x n
  std::vector<Vector> L;
  std::vector<Matrix> P;  // n x n symmetric
  std::vector<Vector> S;
  std::vector<double> w;
  Matrix F;  // A + sum B[j]K[j]
  Matrix G;  // C + sum D[j]K[j]
  double lambda = 0.0;  // spectral norm of F
  int iterations = 0;
  bool converged = false;
  std::vector<double> contraction_history;  // successive-iterate distances
  AlgebraicResiduals residuals;
};

/// Default convergence tolerance (absolute, Frobenius) and iteration cap.
inline constexpr double kStationaryTol = 1e-11;
inline constexpr int kStationaryMaxIter = 10000;

/// Iterates the backward recursion until the gains and value matrices stop
/// moving. Requires time-invariant references; refuses a unit discount
/// combined with a nonzero reference (the affine value diverges).
/// Throws SingularHError, NotConvergedError, or UnstableLimitError.
StationarySolution iterate_to_limit(const GameSpec& spec,
                                    double tol = kStationaryTol,
                                    int max_iter = kStationaryMaxIter);

/// Substitutes a candidate limit into the algebraic fixed-point equations.
AlgebraicResiduals algebraic_residuals(const GameSpec& spec,
                                       const StationarySolution& sol);

/// Nash certificate: solves player i's single-agent discounted LQR against
/// the frozen opponent gains by an independent Riccati iteration and returns
/// the spectral-norm distance between the oracle gain and K[i]. Requires zero
/// references and a stable limit.
double best_response_gap(const GameSpec& spec, const StationarySolution& sol,
                         int player);

}  // namespace lqgame

#endif
