#include "lqgame/stationary.hpp"

#include <algorithm>
#include <stdexcept>

namespace lqgame {

double AlgebraicResiduals::max() const {
  double worst = 0.0;
  for (const auto* v : {&K, &P, &L, &S, &w}) {
    for (double r : *v) worst = std::max(worst, r);
  }
  return worst;
}

StationarySolution iterate_to_limit(const GameSpec& spec, double tol,
                                    int max_iter) {
  if (!spec.time_invariant_references()) {
    throw std::invalid_argument(
        "iterate_to_limit requires time-invariant references");
  }
  const std::vector<Vector> l = spec.references_at(1);
  for (int i = 0; i < spec.N; ++i) {
    if (spec.delta[i] == 1.0 && !spec.ref[i].is_zero()) {
      throw std::invalid_argument(
          "unit discount with a nonzero reference: the affine value diverges");
    }
  }

  StageValues next = StageValues::zeros(spec);
  StageGains gains;
  gains.K.assign(spec.N, Matrix::Zero(1, 1));
  gains.L.assign(spec.N, Vector::Zero(1));
  bool have_gains = false;

  StationarySolution sol;
  double dist = std::numeric_limits<double>::infinity();
  int k = 0;
  for (; k < max_iter; ++k) {
    StageResult res = stage_step(spec, -k, next, l);
    if (have_gains) {
      dist = 0.0;
      for (int i = 0; i < spec.N; ++i) {
        dist = std::max(dist, (res.values.P[i] - next.P[i]).norm());
        dist = std::max(dist, (res.values.S[i] - next.S[i]).norm());
        dist = std::max(dist, std::abs(res.values.w[i] - next.w[i]));
        dist = std::max(dist, (res.gains.K[i] - gains.K[i]).norm());
        dist = std::max(dist, (res.gains.L[i] - gains.L[i]).norm());
      }
      sol.contraction_history.push_back(dist);
    }
    next = res.values;
    gains = res.gains;
    have_gains = true;
    if (dist < tol) {
      sol.converged = true;
      ++k;
      break;
    }
  }
  sol.iterations = k;
  if (!sol.converged) throw NotConvergedError(k, dist);

  sol.K = gains.K;
  sol.L = gains.L;
  sol.P = next.P;
  sol.S = next.S;
  sol.w = next.w;
  const StageAssembly cl = assemble_closed_loop(spec, gains, l);
  sol.F = cl.F;
  sol.G = cl.G;
  sol.lambda = spectral_norm(sol.F);
  if (sol.lambda >= 1.0) throw UnstableLimitError(sol.lambda);
  sol.residuals = algebraic_residuals(spec, sol);
  return sol;
}

AlgebraicResiduals algebraic_residuals(const GameSpec& spec,
                                       const StationarySolution& sol) {
  const std::vector<Vector> l = spec.references_at(1);
  StageGains gains{sol.K, sol.L};
  const StageAssembly cl = assemble_closed_loop(spec, gains, l);

  AlgebraicResiduals res;
  res.K.resize(spec.N);
  res.P.resize(spec.N);
  res.L.resize(spec.N);
  res.S.resize(spec.N);
  res.w.resize(spec.N);
  for (int i = 0; i < spec.N; ++i) {
    const double di = spec.delta[i];
    const Matrix tK1 = di * spec.B[i].transpose() * sol.P[i] * cl.F;
    const Matrix tK2 = spec.D[i].transpose() * spec.Q[i] * cl.G;
    const Matrix tK3 = spec.R[i][i] * sol.K[i];
    res.K[i] = (tK1 + tK2 + tK3).norm() /
               (1.0 + std::max({tK1.norm(), tK2.norm(), tK3.norm()}));

    Matrix Pref = cl.G.transpose() * spec.Q[i] * cl.G +
                  di * cl.F.transpose() * sol.P[i] * cl.F;
    Vector Sref = cl.G.transpose() * spec.Q[i] * cl.offset[i] +
                  di * cl.F.transpose() * (sol.P[i] * cl.drift + sol.S[i]);
    double wsum = 0.5 * cl.offset[i].dot(spec.Q[i] * cl.offset[i]) +
                  0.5 * di * cl.drift.dot(sol.P[i] * cl.drift) +
                  di * cl.drift.dot(sol.S[i]);
    for (int j = 0; j < spec.N; ++j) {
      Pref += sol.K[j].transpose() * spec.R[i][j] * sol.K[j];
      Sref += sol.K[j].transpose() * spec.R[i][j] * sol.L[j];
      wsum += 0.5 * sol.L[j].dot(spec.R[i][j] * sol.L[j]);
    }
    res.P[i] = (sol.P[i] - Pref).norm() / (1.0 + Pref.norm());

    const Vector tL1 =
        di * spec.B[i].transpose() * (sol.P[i] * cl.drift + sol.S[i]);
    const Vector tL2 = spec.R[i][i] * sol.L[i];
    const Vector tL3 = spec.D[i].transpose() * spec.Q[i] * cl.offset[i];
    res.L[i] = (tL1 + tL2 + tL3).norm() /
               (1.0 + std::max({tL1.norm(), tL2.norm(), tL3.norm()}));

    res.S[i] = (sol.S[i] - Sref).norm() / (1.0 + Sref.norm());
    // At the fixed point w = wsum + delta*w, i.e. (1-delta) w = wsum.
    res.w[i] = std::abs((1.0 - di) * sol.w[i] - wsum) /
               (1.0 + std::abs(wsum));
  }
  return res;
}

double best_response_gap(const GameSpec& spec, const StationarySolution& sol,
                         int player) {
  if (player < 0 || player >= spec.N) {
    throw std::out_of_range("player out of range");
  }
  if (!spec.zero_references()) {
    throw std::invalid_argument("best_response_gap requires zero references");
  }
  if (!(sol.lambda < 1.0)) throw UnstableClosedLoopError(sol.lambda);

  const int i = player;
  const double di = spec.delta[i];

  // Single-agent problem with the opponents frozen at their limit gains.
  Matrix A_cl = spec.A;
  Matrix C_cl = spec.C;
  Matrix Qx = Matrix::Zero(spec.n, spec.n);
  for (int j = 0; j < spec.N; ++j) {
    if (j == i) continue;
    A_cl += spec.B[j] * sol.K[j];
    C_cl += spec.D[j] * sol.K[j];
    Qx += sol.K[j].transpose() * spec.R[i][j] * sol.K[j];
  }
  Qx += C_cl.transpose() * spec.Q[i] * C_cl;
  const Matrix Scr = C_cl.transpose() * spec.Q[i] * spec.D[i];  // cross term
  const Matrix Ru = spec.D[i].transpose() * spec.Q[i] * spec.D[i] +
                    spec.R[i][i];
  const Matrix& Bi = spec.B[i];

  Matrix P = Matrix::Zero(spec.n, spec.n);
  Matrix Kbr;
  double d = std::numeric_limits<double>::infinity();
  const int max_iter = 200000;
  for (int k = 0; k < max_iter; ++k) {
    const Matrix Mi = Ru + di * Bi.transpose() * P * Bi;
    Kbr = -Mi.ldlt()
               .solve(di * Bi.transpose() * P * A_cl + Scr.transpose())
               .eval();
    const Matrix Acl2 = A_cl + Bi * Kbr;
    Matrix Pnew = Qx + Scr * Kbr + Kbr.transpose() * Scr.transpose() +
                  Kbr.transpose() * Ru * Kbr +
                  di * Acl2.transpose() * P * Acl2;
    Pnew = symmetrize(Pnew);
    d = (Pnew - P).norm();
    P = Pnew;
    if (d < 1e-13 * (1.0 + P.norm())) {
      return spectral_norm(Kbr - sol.K[i]);
    }
  }
  throw NotConvergedError(max_iter, d);
}

}  // namespace lqgame
