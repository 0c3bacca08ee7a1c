#include "lqgame/bounds.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lqgame {

double compute_M(double lambda, double b, double epsilon) {
  if (lambda < 0.0 || b < 0.0 || epsilon < 0.0) {
    throw std::invalid_argument("compute_M inputs must be nonnegative");
  }
  const double rho = lambda + b * epsilon;
  if (rho >= 1.0 - 1e-12) throw InapplicableError(rho);

  // t = 1 contributes 0; t = 2 contributes 1 (also for rho = 0, where the
  // convention rho^0 = 1 applies). Scan upward until the unimodal maximand
  // decreases twice in a row.
  double best = 1.0;
  double pw = 1.0;  // rho^(t-2)
  double prev = 1.0;
  int decreases = 0;
  for (long t = 3; t <= 1000000; ++t) {
    pw *= rho;
    const double val = (double)(t - 1) * pw;
    best = std::max(best, val);
    decreases = val < prev ? decreases + 1 : 0;
    if (decreases >= 2) break;
    prev = val;
  }
  return best;
}

BoundReport gap_bound(const GameSpec& spec, const StationarySolution& sol,
                      const std::vector<int>& horizons, const Vector& x1) {
  if (!spec.zero_references()) {
    throw std::invalid_argument("gap_bound requires zero references");
  }
  if (!(sol.lambda < 1.0)) throw UnstableClosedLoopError(sol.lambda);
  if (x1.size() != spec.n) {
    throw std::invalid_argument("initial state length != n");
  }

  BoundReport rep;
  rep.horizons = horizons;
  rep.T_h = *std::min_element(horizons.begin(), horizons.end());
  rep.lambda = sol.lambda;
  for (int i = 0; i < spec.N; ++i) {
    rep.b += spectral_norm(spec.B[i]);
    rep.d += spectral_norm(spec.D[i]);
  }

  const AffineStrategyProfile pr = make_receding_strategy(spec, horizons);
  rep.epsilon = 0.0;
  for (int i = 0; i < spec.N; ++i) {
    rep.epsilon = std::max(rep.epsilon, spectral_norm(pr.gain[i] - sol.K[i]));
  }

  const double inf = std::numeric_limits<double>::infinity();
  rep.G1.assign(spec.N, inf);
  rep.G2.assign(spec.N, inf);
  rep.theta.assign(spec.N, inf);
  rep.bound.assign(spec.N, inf);
  rep.applicable = rep.lambda + rep.b * rep.epsilon < 1.0 - 1e-12;
  if (!rep.applicable) {
    rep.M = inf;
    rep.g_eps = inf;
    return rep;
  }

  rep.M = compute_M(rep.lambda, rep.b, rep.epsilon);
  const double Gn = spectral_norm(sol.G);
  const double e = rep.epsilon;
  rep.g_eps = (Gn + rep.d * e) * rep.M * rep.b * e + rep.d * e;
  const double x1sq = x1.squaredNorm();
  for (int i = 0; i < spec.N; ++i) {
    rep.G1[i] = 2.0 * rep.g_eps * spectral_norm(spec.Q[i]) * (Gn + rep.d * e);
    double g2 = 0.0;
    for (int j = 0; j < spec.N; ++j) {
      const double rn = spectral_norm(spec.R[i][j]);
      const double kn = spectral_norm(sol.K[j]);
      const double factor = kn * rep.b * rep.M + 1.0;
      g2 += e * e * rn * factor + 2.0 * e * rn * kn * factor;
    }
    rep.G2[i] = g2;
    rep.theta[i] = rep.G1[i] + rep.G2[i];
    rep.bound[i] = spec.delta[i] < 1.0
                       ? 0.5 * x1sq * rep.theta[i] / (1.0 - spec.delta[i])
                       : inf;
  }
  return rep;
}

}  // namespace lqgame
