#ifndef LQGAME_BOUNDS_HPP
#define LQGAME_BOUNDS_HPP

#include <vector>

#include "lqgame/simulate.hpp"

namespace lqgame {

/// max over integers t >= 1 of (t-1) rho^(t-2) with rho = lambda + b*eps.
/// The maximand is 0 at t = 1 and unimodal afterwards. Throws
/// InapplicableError when rho >= 1 (the maximum is unbounded).
double compute_M(double lambda, double b, double epsilon);

/// Certified upper bound on the receding-horizon cost gap and the constant
/// chain behind it.
struct BoundReport {
  double epsilon = 0.0;  // max_i ||K_1(T^i) - K*_i||_2
  double b = 0.0;        // sum ||B^i||_2
  double d = 0.0;        // sum ||D^i||_2
  double lambda = 0.0;   // ||F*||_2
  double M = 0.0;
  double g_eps = 0.0;
  std::vector<double> G1, G2, theta;
  std::vector<double> bound;  // 1/2 ||x1||^2 theta_i / (1 - delta_i)
  bool applicable = false;    // lambda + b*epsilon < 1
  std::vector<int> horizons;
  int T_h = 0;  // min horizon
};

/// Evaluates the full constant chain for the given horizon tuple. Zero
/// references only. When lambda + b*epsilon >= 1 the report is returned with
/// applicable = false and infinite constants.
BoundReport gap_bound(const GameSpec& spec, const StationarySolution& sol,
                      const std::vector<int>& horizons, const Vector& x1);

}  // namespace lqgame

#endif
