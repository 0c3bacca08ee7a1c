#ifndef LQGAME_MATRIX_UTILS_HPP
#define LQGAME_MATRIX_UTILS_HPP

#include <Eigen/Dense>

namespace lqgame {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest singular value. Throws std::invalid_argument on non-finite entries.
double spectral_norm(const Matrix& m);

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Relative asymmetry ||M - M^T|| / (1 + ||M||), Frobenius.
double asymmetry(const Matrix& m);

/// Symmetrize if the relative asymmetry is below 1e-9, otherwise throw
/// std::invalid_argument naming `what`.
Matrix symmetrize_checked(const Matrix& m, const std::string& what);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue_sym(const Matrix& m);

// Scale-aware definiteness tests.
bool is_psd(const Matrix& m);
bool is_pd(const Matrix& m);

}  // namespace lqgame

#endif
