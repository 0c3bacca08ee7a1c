#include "lqgame/simulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace lqgame {

namespace {

void check_profile(const GameSpec& spec, const AffineStrategyProfile& pr) {
  if ((int)pr.gain.size() != spec.N || (int)pr.offset.size() != spec.N) {
    throw std::invalid_argument("profile needs one strategy per player");
  }
  for (int i = 0; i < spec.N; ++i) {
    if (pr.gain[i].rows() != spec.m[i] || pr.gain[i].cols() != spec.n ||
        pr.offset[i].size() != spec.m[i]) {
      throw std::invalid_argument("profile dimensions do not match the game");
    }
  }
}

struct ClosedLoop {
  Matrix F;      // A + sum B gain
  Matrix G;      // C + sum D gain
  Vector drift;  // sum B offset
  Vector bias;   // sum D offset
};

ClosedLoop close_loop(const GameSpec& spec, const AffineStrategyProfile& pr) {
  ClosedLoop cl{spec.A, spec.C, Vector::Zero(spec.n), Vector::Zero(spec.p)};
  for (int j = 0; j < spec.N; ++j) {
    cl.F += spec.B[j] * pr.gain[j];
    cl.G += spec.D[j] * pr.gain[j];
    cl.drift += spec.B[j] * pr.offset[j];
    cl.bias += spec.D[j] * pr.offset[j];
  }
  return cl;
}

}  // namespace

AffineStrategyProfile make_receding_strategy(const GameSpec& spec,
                                             const std::vector<int>& horizons) {
  if ((int)horizons.size() != spec.N) {
    throw std::invalid_argument("need one horizon per player");
  }
  if (!spec.time_invariant_references()) {
    throw std::invalid_argument(
        "receding-horizon strategies require time-invariant references");
  }
  AffineStrategyProfile pr;
  pr.provenance = AffineStrategyProfile::Provenance::RecedingHorizon;
  pr.horizons = horizons;
  pr.gain.resize(spec.N);
  pr.offset.resize(spec.N);
  for (int i = 0; i < spec.N; ++i) {
    if (horizons[i] < 1) throw std::invalid_argument("horizons must be >= 1");
    const FiniteHorizonSolution sol = backward_solve(spec, horizons[i]);
    pr.gain[i] = sol.gains[0].K[i];
    pr.offset[i] = sol.gains[0].L[i];
  }
  return pr;
}

AffineStrategyProfile stationary_profile(const StationarySolution& sol) {
  AffineStrategyProfile pr;
  pr.provenance = AffineStrategyProfile::Provenance::Stationary;
  pr.gain = sol.K;
  pr.offset = sol.L;
  return pr;
}

Trajectory rollout(const GameSpec& spec, const AffineStrategyProfile& profile,
                   const Vector& x1, const RolloutStop& stop) {
  check_profile(spec, profile);
  if (x1.size() != spec.n) {
    throw std::invalid_argument("initial state length != n");
  }
  const ClosedLoop cl = close_loop(spec, profile);

  const bool tail_mode = stop.mode == RolloutStop::Mode::TailTol;
  double rho = 0.0;
  // Tail-bound machinery: with rho = ||F||_2 < 1 the state contracts onto
  // x_inf = (I - F)^{-1} drift, and each undiscounted stage cost is bounded
  // by a quadratic in the contraction radius. Per player the discarded cost
  // splits into three geometric series.
  std::vector<double> alpha, beta, gamma;
  double eps0 = 0.0;
  if (tail_mode) {
    if (!spec.time_invariant_references()) {
      throw std::invalid_argument(
          "tail-bound mode requires time-invariant references");
    }
    rho = spectral_norm(cl.F);
    if (!(rho < 1.0)) throw UnstableClosedLoopError(rho);
    const Vector x_inf =
        (Matrix::Identity(spec.n, spec.n) - cl.F).lu().solve(cl.drift);
    eps0 = (x1 - x_inf).norm();
    const Vector y_inf = cl.G * x_inf + cl.bias;
    alpha.resize(spec.N);
    beta.resize(spec.N);
    gamma.resize(spec.N);
    for (int i = 0; i < spec.N; ++i) {
      const Vector li = spec.ref[i].at(1, spec.p);
      Matrix hess = cl.G.transpose() * spec.Q[i] * cl.G;
      Vector grad = cl.G.transpose() * spec.Q[i] * (y_inf - li);
      double q_inf = 0.5 * (y_inf - li).dot(spec.Q[i] * (y_inf - li));
      for (int j = 0; j < spec.N; ++j) {
        const Vector uj = profile.gain[j] * x_inf + profile.offset[j];
        hess += profile.gain[j].transpose() * spec.R[i][j] * profile.gain[j];
        grad += profile.gain[j].transpose() * spec.R[i][j] * uj;
        q_inf += 0.5 * uj.dot(spec.R[i][j] * uj);
      }
      alpha[i] = std::abs(q_inf);
      beta[i] = grad.norm();
      gamma[i] = 0.5 * spectral_norm(hess);
      if (spec.delta[i] == 1.0 && alpha[i] > 1e-14) {
        throw DivergentCostError(
            "unit discount with nonzero stationary stage cost: the total "
            "cost is infinite");
      }
    }
  } else if (stop.length < 1) {
    throw std::invalid_argument("fixed rollout length must be >= 1");
  }

  // Tail of the discarded cost after stage tau, per player.
  auto tail_after = [&](int i, int tau) {
    const double di = spec.delta[i];
    double tail = 0.0;
    if (di < 1.0) tail += alpha[i] * std::pow(di, tau) / (1.0 - di);
    const double r1 = di * rho;
    tail += beta[i] * eps0 * std::pow(r1, tau) / (1.0 - r1);
    const double r2 = di * rho * rho;
    tail += gamma[i] * eps0 * eps0 * std::pow(r2, tau) / (1.0 - r2);
    return tail;
  };

  Trajectory traj;
  traj.stage_cost.assign(spec.N, {});
  traj.total.assign(spec.N, 0.0);
  traj.tail_bound.assign(spec.N, 0.0);
  std::vector<double> disc(spec.N, 1.0);

  Vector x = x1;
  const long step_cap = 100000000;
  for (long t = 1;; ++t) {
    if (!x.allFinite()) throw DivergedTrajectoryError();
    Vector u(spec.total_m());
    Vector y = cl.G * x + cl.bias;
    int row = 0;
    for (int j = 0; j < spec.N; ++j) {
      u.segment(row, spec.m[j]) = profile.gain[j] * x + profile.offset[j];
      row += spec.m[j];
    }
    traj.x.push_back(x);
    traj.y.push_back(y);
    traj.u.push_back(u);
    for (int i = 0; i < spec.N; ++i) {
      const Vector li = spec.ref[i].at((int)t, spec.p);
      double c = 0.5 * (y - li).dot(spec.Q[i] * (y - li));
      row = 0;
      for (int j = 0; j < spec.N; ++j) {
        const auto uj = u.segment(row, spec.m[j]);
        c += 0.5 * uj.dot(spec.R[i][j] * uj);
        row += spec.m[j];
      }
      c *= disc[i];
      traj.stage_cost[i].push_back(c);
      traj.total[i] += c;
      disc[i] *= spec.delta[i];
    }

    bool done;
    if (tail_mode) {
      done = true;
      for (int i = 0; i < spec.N; ++i) {
        traj.tail_bound[i] = tail_after(i, (int)t);
        if (traj.tail_bound[i] >= stop.tail_tol) done = false;
      }
      if (t >= step_cap) throw DivergentCostError("tail bound did not shrink");
    } else {
      done = t >= stop.length;
    }
    if (done) {
      traj.length = (int)t;
      break;
    }
    x = cl.F * x + cl.drift;
  }
  return traj;
}

std::vector<double> closed_form_cost(const GameSpec& spec,
                                     const AffineStrategyProfile& profile,
                                     const Vector& x1) {
  check_profile(spec, profile);
  if (!spec.zero_references()) {
    throw std::invalid_argument("closed_form_cost requires zero references");
  }
  if (x1.size() != spec.n) {
    throw std::invalid_argument("initial state length != n");
  }
  const ClosedLoop cl = close_loop(spec, profile);
  const double rho = spectral_norm(cl.F);
  std::vector<double> cost(spec.N);
  for (int i = 0; i < spec.N; ++i) {
    if (!(spec.delta[i] * rho * rho < 1.0)) {
      throw UnstableClosedLoopError(rho);
    }
    Matrix base = cl.G.transpose() * spec.Q[i] * cl.G;
    for (int j = 0; j < spec.N; ++j) {
      base += profile.gain[j].transpose() * spec.R[i][j] * profile.gain[j];
    }
    Matrix Pi = Matrix::Zero(spec.n, spec.n);
    for (int k = 0; k < 1000000; ++k) {
      Matrix Pnew =
          symmetrize(base + spec.delta[i] * cl.F.transpose() * Pi * cl.F);
      const double d = (Pnew - Pi).norm();
      Pi = Pnew;
      if (d < 1e-12) break;
    }
    cost[i] = 0.5 * x1.dot(Pi * x1);
  }
  return cost;
}

std::vector<CostGap> cost_gap(const GameSpec& spec,
                              const StationarySolution& sol,
                              const std::vector<int>& horizons,
                              const Vector& x1) {
  const AffineStrategyProfile approx = make_receding_strategy(spec, horizons);
  const AffineStrategyProfile limit = stationary_profile(sol);
  std::vector<double> ja, jl;
  if (spec.zero_references()) {
    ja = closed_form_cost(spec, approx, x1);
    jl = closed_form_cost(spec, limit, x1);
  } else {
    const RolloutStop stop = RolloutStop::tail_tol_stop(kDefaultTailTol);
    ja = rollout(spec, approx, x1, stop).total;
    jl = rollout(spec, limit, x1, stop).total;
  }
  std::vector<CostGap> out(spec.N);
  for (int i = 0; i < spec.N; ++i) {
    out[i] = {ja[i], jl[i], std::abs(ja[i] - jl[i])};
  }
  return out;
}

std::vector<CostGap> cost_gap(const GameSpec& spec,
                              const std::vector<int>& horizons,
                              const Vector& x1) {
  return cost_gap(spec, iterate_to_limit(spec), horizons, x1);
}

}  // namespace lqgame
