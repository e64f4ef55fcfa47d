#include "kci/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kci {

double median_width(const Eigen::MatrixXd& points, int subsample_cap) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw std::invalid_argument("median_width: need at least 2 points");
  const Eigen::Index m = std::min<Eigen::Index>(n, std::max(subsample_cap, 2));

  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      dists.push_back((points.row(i) - points.row(j)).norm());

  std::sort(dists.begin(), dists.end());
  const std::size_t k = dists.size();
  double med = (k % 2 == 1) ? dists[k / 2] : 0.5 * (dists[k / 2 - 1] + dists[k / 2]);
  return med > 0.0 ? med : 1.0;
}

double empirical_width(Eigen::Index n) {
  if (n <= 200) return 0.8;
  if (n > 1200) return 0.3;
  return 0.5;
}

Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& points, double width) {
  if (width <= 0.0) throw std::invalid_argument("gaussian_kernel: width must be positive");
  const Eigen::Index n = points.rows();
  const Eigen::VectorXd sq = points.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1)
                     - 2.0 * points * points.transpose();
  d2 = d2.cwiseMax(0.0);
  return (-d2 / (2.0 * width * width)).array().exp();
}

Eigen::MatrixXd center_matrix(const Eigen::MatrixXd& m) {
  const double n = static_cast<double>(m.rows());
  const Eigen::VectorXd rowmean = m.rowwise().mean();
  const Eigen::RowVectorXd colmean = m.colwise().mean();
  const double total = m.mean();
  Eigen::MatrixXd out = m;
  out.colwise() -= rowmean;
  out.rowwise() -= colmean;
  out.array() += total;
  (void)n;
  return out;
}

CenteredKernel gaussian_centered_kernel(const Eigen::MatrixXd& points, double width) {
  CenteredKernel k;
  Eigen::MatrixXd c = center_matrix(gaussian_kernel(points, width));
  k.matrix = 0.5 * (c + c.transpose());  // kill roundoff asymmetry
  k.width = width;
  k.source_dims = static_cast<int>(points.cols());
  return k;
}

CenteredKernel gaussian_centered_kernel(const DataMatrix& data,
                                        const std::vector<int>& cols,
                                        double width) {
  if (cols.empty()) throw std::invalid_argument("gaussian_centered_kernel: empty column set");
  return gaussian_centered_kernel(data.select(cols), width);
}

}  // namespace kci
