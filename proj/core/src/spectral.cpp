#include "kci/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace kci {

EmpiricalFeatures spectral_features(const Eigen::MatrixXd& sym, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("spectral_features: negative threshold");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral_features: eigensolver failed to converge on " +
                             std::to_string(sym.rows()) + "x" + std::to_string(sym.cols()) +
                             " matrix");

  const Eigen::Index n = sym.rows();
  // Eigen returns ascending order; walk from the top, clamp and truncate.
  Eigen::Index m = 0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double lambda = std::max(solver.eigenvalues()(i), 0.0);
    if (lambda < threshold) break;
    ++m;
  }

  EmpiricalFeatures f;
  f.truncation = threshold;
  f.eigenvalues.resize(m);
  f.columns.resize(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = n - 1 - k;
    const double lambda = std::max(solver.eigenvalues()(src), 0.0);
    f.eigenvalues(k) = lambda;
    f.columns.col(k) = solver.eigenvectors().col(src) * std::sqrt(lambda);
  }
  return f;
}

EmpiricalFeatures spectral_features(const CenteredKernel& kernel, double threshold) {
  return spectral_features(kernel.matrix, threshold);
}

}  // namespace kci
