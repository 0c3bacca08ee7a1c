#include "lqgame/riccati.hpp"

#include <algorithm>
#include <stdexcept>

namespace lqgame {

StageValues StageValues::zeros(const GameSpec& spec) {
  StageValues v;
  v.P.assign(spec.N, Matrix::Zero(spec.n, spec.n));
  v.S.assign(spec.N, Vector::Zero(spec.n));
  v.w.assign(spec.N, 0.0);
  return v;
}

StageAssembly assemble_closed_loop(const GameSpec& spec,
                                   const StageGains& gains,
                                   const std::vector<Vector>& l_t) {
  StageAssembly a;
  a.F = spec.A;
  a.G = spec.C;
  a.drift = Vector::Zero(spec.n);
  Vector dl = Vector::Zero(spec.p);
  for (int j = 0; j < spec.N; ++j) {
    a.F += spec.B[j] * gains.K[j];
    a.G += spec.D[j] * gains.K[j];
    a.drift += spec.B[j] * gains.L[j];
    dl += spec.D[j] * gains.L[j];
  }
  a.offset.resize(spec.N);
  for (int i = 0; i < spec.N; ++i) a.offset[i] = dl - l_t[i];
  return a;
}

namespace {

void check_value_dims(const GameSpec& spec, const std::vector<Matrix>& P_next) {
  if ((int)P_next.size() != spec.N) {
    throw std::invalid_argument("P_next needs one block per player");
  }
  for (const auto& P : P_next) {
    if (P.rows() != spec.n || P.cols() != spec.n) {
      throw std::invalid_argument("P_next block is not n x n");
    }
  }
}

}  // namespace

Matrix assemble_H(const GameSpec& spec, const std::vector<Matrix>& P_next) {
  check_value_dims(spec, P_next);
  const int mt = spec.total_m();
  const Matrix Bfull = spec.stacked_B();
  const Matrix Dfull = spec.stacked_D();
  Matrix H(mt, mt);
  int row = 0;
  for (int i = 0; i < spec.N; ++i) {
    H.middleRows(row, spec.m[i]) =
        spec.D[i].transpose() * spec.Q[i] * Dfull +
        spec.delta[i] * spec.B[i].transpose() * P_next[i] * Bfull;
    H.block(row, row, spec.m[i], spec.m[i]) += spec.R[i][i];
    row += spec.m[i];
  }
  return H;
}

Matrix assemble_g(const GameSpec& spec, const std::vector<Matrix>& P_next) {
  check_value_dims(spec, P_next);
  Matrix g(spec.total_m(), spec.n);
  int row = 0;
  for (int i = 0; i < spec.N; ++i) {
    g.middleRows(row, spec.m[i]) =
        -spec.D[i].transpose() * spec.Q[i] * spec.C -
        spec.delta[i] * spec.B[i].transpose() * P_next[i] * spec.A;
    row += spec.m[i];
  }
  return g;
}

Vector assemble_g_tilde(const GameSpec& spec, const std::vector<Vector>& S_next,
                        const std::vector<Vector>& l_t) {
  if ((int)S_next.size() != spec.N || (int)l_t.size() != spec.N) {
    throw std::invalid_argument("S_next and l_t need one block per player");
  }
  Vector g(spec.total_m());
  int row = 0;
  for (int i = 0; i < spec.N; ++i) {
    if (S_next[i].size() != spec.n) {
      throw std::invalid_argument("S_next block is not length n");
    }
    if (l_t[i].size() != spec.p) {
      throw std::invalid_argument("reference vector is not length p");
    }
    // From the affine stationarity condition: the reference term lands on
    // the right-hand side with a positive sign.
    g.segment(row, spec.m[i]) =
        spec.D[i].transpose() * spec.Q[i] * l_t[i] -
        spec.delta[i] * spec.B[i].transpose() * S_next[i];
    row += spec.m[i];
  }
  return g;
}

StageResult stage_step(const GameSpec& spec, int t, const StageValues& next,
                       const std::vector<Vector>& l_t, double cond_max) {
  const Matrix H = assemble_H(spec, next.P);

  Eigen::JacobiSVD<Matrix> svd(H);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double cond = smin > 0.0 ? smax / smin
                                 : std::numeric_limits<double>::infinity();
  if (!(cond < cond_max)) throw SingularHError(t, cond);

  // One factorization serves both right-hand sides.
  Eigen::PartialPivLU<Matrix> lu(H);
  const Matrix Kstack = lu.solve(assemble_g(spec, next.P));
  const Vector Lstack = lu.solve(assemble_g_tilde(spec, next.S, l_t));

  StageResult res;
  res.cond_H = cond;
  res.gains.K.resize(spec.N);
  res.gains.L.resize(spec.N);
  int row = 0;
  for (int i = 0; i < spec.N; ++i) {
    res.gains.K[i] = Kstack.middleRows(row, spec.m[i]);
    res.gains.L[i] = Lstack.segment(row, spec.m[i]);
    row += spec.m[i];
  }

  const StageAssembly cl = assemble_closed_loop(spec, res.gains, l_t);
  res.values.P.resize(spec.N);
  res.values.S.resize(spec.N);
  res.values.w.resize(spec.N);
  for (int i = 0; i < spec.N; ++i) {
    const double di = spec.delta[i];
    Matrix P = cl.G.transpose() * spec.Q[i] * cl.G +
               di * cl.F.transpose() * next.P[i] * cl.F;
    Vector S = cl.G.transpose() * spec.Q[i] * cl.offset[i] +
               di * cl.F.transpose() * (next.P[i] * cl.drift + next.S[i]);
    double w = 0.5 * cl.offset[i].dot(spec.Q[i] * cl.offset[i]) +
               0.5 * di * cl.drift.dot(next.P[i] * cl.drift) +
               di * cl.drift.dot(next.S[i]) + di * next.w[i];
    for (int j = 0; j < spec.N; ++j) {
      P += res.gains.K[j].transpose() * spec.R[i][j] * res.gains.K[j];
      S += res.gains.K[j].transpose() * spec.R[i][j] * res.gains.L[j];
      w += 0.5 * res.gains.L[j].dot(spec.R[i][j] * res.gains.L[j]);
    }
    res.values.P[i] = symmetrize(P);
    res.values.S[i] = S;
    res.values.w[i] = w;
  }
  return res;
}

FiniteHorizonSolution backward_solve(const GameSpec& spec, int T,
                                     double cond_max) {
  if (T < 1) throw std::invalid_argument("horizon must be at least 1");
  for (int i = 0; i < spec.N; ++i) {
    const int len = spec.ref[i].length();
    if (len >= 0 && len < T) {
      throw std::invalid_argument("reference sequence of player " +
                                  std::to_string(i) +
                                  " is shorter than the horizon");
    }
  }
  FiniteHorizonSolution sol;
  sol.T = T;
  sol.gains.resize(T);
  sol.values.resize(T);
  sol.cond_H.resize(T);
  StageValues next = StageValues::zeros(spec);
  for (int t = T; t >= 1; --t) {
    StageResult res = stage_step(spec, t, next, spec.references_at(t), cond_max);
    sol.gains[t - 1] = res.gains;
    sol.values[t - 1] = res.values;
    sol.cond_H[t - 1] = res.cond_H;
    next = sol.values[t - 1];
  }
  return sol;
}

double value_at(const FiniteHorizonSolution& sol, int t, int player,
                const Vector& x) {
  if (t < 1 || t > sol.T + 1) throw std::out_of_range("stage out of range");
  if (player < 0 || player >= (int)sol.values[0].P.size()) {
    throw std::out_of_range("player out of range");
  }
  if (t == sol.T + 1) return 0.0;
  const StageValues& v = sol.values[t - 1];
  return 0.5 * x.dot(v.P[player] * x) + v.S[player].dot(x) + v.w[player];
}

double finite_horizon_residual(const GameSpec& spec,
                               const FiniteHorizonSolution& sol) {
  double worst = 0.0;
  StageValues next = StageValues::zeros(spec);
  for (int t = sol.T; t >= 1; --t) {
    const StageGains& gn = sol.gains[t - 1];
    const StageValues& vl = sol.values[t - 1];
    const StageAssembly cl =
        assemble_closed_loop(spec, gn, spec.references_at(t));
    for (int i = 0; i < spec.N; ++i) {
      const double di = spec.delta[i];
      const Matrix tK1 = di * spec.B[i].transpose() * next.P[i] * cl.F;
      const Matrix tK2 = spec.D[i].transpose() * spec.Q[i] * cl.G;
      const Matrix tK3 = spec.R[i][i] * gn.K[i];
      double scale = 1.0 + std::max({tK1.norm(), tK2.norm(), tK3.norm()});
      worst = std::max(worst, (tK1 + tK2 + tK3).norm() / scale);

      const Vector tL1 =
          di * spec.B[i].transpose() * (next.P[i] * cl.drift + next.S[i]);
      const Vector tL2 = spec.R[i][i] * gn.L[i];
      const Vector tL3 = spec.D[i].transpose() * spec.Q[i] * cl.offset[i];
      scale = 1.0 + std::max({tL1.norm(), tL2.norm(), tL3.norm()});
      worst = std::max(worst, (tL1 + tL2 + tL3).norm() / scale);

      Matrix Pref = cl.G.transpose() * spec.Q[i] * cl.G +
                    di * cl.F.transpose() * next.P[i] * cl.F;
      Vector Sref = cl.G.transpose() * spec.Q[i] * cl.offset[i] +
                    di * cl.F.transpose() * (next.P[i] * cl.drift + next.S[i]);
      double wref = 0.5 * cl.offset[i].dot(spec.Q[i] * cl.offset[i]) +
                    0.5 * di * cl.drift.dot(next.P[i] * cl.drift) +
                    di * cl.drift.dot(next.S[i]) + di * next.w[i];
      for (int j = 0; j < spec.N; ++j) {
        Pref += gn.K[j].transpose() * spec.R[i][j] * gn.K[j];
        Sref += gn.K[j].transpose() * spec.R[i][j] * gn.L[j];
        wref += 0.5 * gn.L[j].dot(spec.R[i][j] * gn.L[j]);
      }
      worst = std::max(worst,
                       (vl.P[i] - Pref).norm() / (1.0 + Pref.norm()));
      worst = std::max(worst,
                       (vl.S[i] - Sref).norm() / (1.0 + Sref.norm()));
      worst = std::max(worst,
                       std::abs(vl.w[i] - wref) / (1.0 + std::abs(wref)));
    }
    next = vl;
  }
  return worst;
}

}  // namespace lqgame
