#ifndef LQGAME_ERRORS_HPP
#define LQGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lqgame {

/// Base class for numerical failures of the solvers.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// H(P_{t+1}) is numerically singular at some stage: the uniqueness
/// hypothesis of the backward recursion fails there.
struct SingularHError : SolverError {
  SingularHError(int stage_, double cond_)
      : SolverError("singular H at stage " + std::to_string(stage_) +
                    " (cond " + std::to_string(cond_) + ")"),
        stage(stage_),
        cond(cond_) {}
  int stage;
  double cond;
};

struct NotConvergedError : SolverError {
  NotConvergedError(int iterations_, double last_delta_)
      : SolverError("iteration did not converge after " +
                    std::to_string(iterations_) + " steps (last delta " +
                    std::to_string(last_delta_) + ")"),
        iterations(iterations_),
        last_delta(last_delta_) {}
  int iterations;
  double last_delta;
};

struct UnstableLimitError : SolverError {
  explicit UnstableLimitError(double lambda_)
      : SolverError("limit closed loop is not stable (lambda " +
                    std::to_string(lambda_) + " >= 1)"),
        lambda(lambda_) {}
  double lambda;
};

struct UnstableClosedLoopError : SolverError {
  explicit UnstableClosedLoopError(double norm_)
      : SolverError("closed loop is not a contraction (norm " +
                    std::to_string(norm_) + ")"),
        norm(norm_) {}
  double norm;
};

struct DivergedTrajectoryError : SolverError {
  DivergedTrajectoryError() : SolverError("trajectory diverged (non-finite state)") {}
};

struct DivergentCostError : SolverError {
  using SolverError::SolverError;
};

/// The cost-gap bound hypothesis lambda + b*epsilon < 1 fails.
struct InapplicableError : SolverError {
  explicit InapplicableError(double rho_)
      : SolverError("bound inapplicable: lambda + b*eps = " +
                    std::to_string(rho_) + " >= 1"),
        rho(rho_) {}
  double rho;
};

/// Malformed game-spec file.
struct ParseError : std::runtime_error {
  ParseError(const std::string& key_, const std::string& message)
      : std::runtime_error("parse error at '" + key_ + "': " + message),
        key(key_) {}
  std::string key;
};

}  // namespace lqgame

#endif
