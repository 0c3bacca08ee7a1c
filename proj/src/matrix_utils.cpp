#include "lqgame/matrix_utils.hpp"

#include <stdexcept>

namespace lqgame {

double spectral_norm(const Matrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("spectral_norm: matrix has non-finite entries");
  }
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.transpose()).norm() / (1.0 + m.norm());
}

Matrix symmetrize_checked(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(what + " is not square");
  }
  if (asymmetry(m) > 1e-9) {
    throw std::invalid_argument(what + " is not symmetric");
  }
  return symmetrize(m);
}

double min_eigenvalue_sym(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& m) {
  const double scale = spectral_norm(m);
  return min_eigenvalue_sym(m) >= -1e-10 * (1.0 + scale);
}

bool is_pd(const Matrix& m) {
  const double scale = spectral_norm(m);
  return min_eigenvalue_sym(m) > 1e-12 * (1.0 + scale);
}

}  // namespace lqgame
