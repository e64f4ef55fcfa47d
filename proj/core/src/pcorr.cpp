#include "kci/pcorr.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace kci {

namespace {

double normal_sf(double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& cols) {
  const Eigen::Index n = cols.rows(), k = cols.cols();
  Eigen::MatrixXd c = cols;
  for (Eigen::Index j = 0; j < k; ++j) {
    c.col(j).array() -= c.col(j).mean();
    const double norm = c.col(j).norm();
    if (norm > 0) c.col(j) /= norm;
  }
  (void)n;
  Eigen::MatrixXd corr = c.transpose() * c;
  corr.diagonal().setOnes();
  return corr;
}

}  // namespace

double partial_correlation(const DataMatrix& data, int x, int y,
                           const std::vector<int>& z_cols) {
  if (x == y) throw std::invalid_argument("partial_correlation: x == y");
  for (int zc : z_cols)
    if (zc == x || zc == y)
      throw std::invalid_argument("partial_correlation: conditioning set contains x or y");

  std::vector<int> cols = {x, y};
  cols.insert(cols.end(), z_cols.begin(), z_cols.end());
  const Eigen::MatrixXd corr = correlation_matrix(data.select(cols));

  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::MatrixXd m = corr;
    if (attempt == 1) m.diagonal().array() += 1e-10;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) continue;
    const Eigen::MatrixXd prec = lu.inverse();
    const double denom = prec(0, 0) * prec(1, 1);
    if (denom <= 0) continue;
    double rho = -prec(0, 1) / std::sqrt(denom);
    return std::clamp(rho, -1.0, 1.0);
  }
  throw std::runtime_error("partial_correlation: singular correlation matrix");
}

double partial_correlation_test(const DataMatrix& data, int x, int y,
                                const std::vector<int>& z_cols) {
  const Eigen::Index n = data.n();
  const Eigen::Index dz = static_cast<Eigen::Index>(z_cols.size());
  if (n <= dz + 3)
    throw std::invalid_argument("partial_correlation_test: need n > |Z| + 3 (n=" +
                                std::to_string(n) + ", |Z|=" + std::to_string(dz) + ")");

  double rho = partial_correlation(data, x, y, z_cols);
  rho = std::clamp(rho, -1.0 + 1e-15, 1.0 - 1e-15);
  const double stat = std::sqrt(static_cast<double>(n - dz - 3)) * std::abs(std::atanh(rho));
  return 2.0 * normal_sf(stat);
}

}  // namespace kci
