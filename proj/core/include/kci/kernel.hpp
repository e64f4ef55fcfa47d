#pragma once

#include <Eigen/Core>
#include <vector>

#include "kci/data.hpp"

namespace kci {

/// Doubly-centered Gaussian kernel matrix H K H with H = I - (1/n) 11^T.
/// Symmetric, zero row sums, PSD up to roundoff.
struct CenteredKernel {
  Eigen::MatrixXd matrix;
  double width = 0.0;       // Gaussian sigma used to build it
  int source_dims = 0;      // number of columns the kernel was built on

  Eigen::Index n() const { return matrix.rows(); }
};

/// Median of Euclidean pairwise distances over at most `subsample_cap`
/// points (deterministic prefix). Returns 1.0 when the median is 0.
double median_width(const Eigen::MatrixXd& points, int subsample_cap = 500);

/// Width rule for the CI-test kernels: 0.8 if n <= 200, 0.3 if n > 1200,
/// 0.5 otherwise. Assumes unit-variance inputs.
double empirical_width(Eigen::Index n);

/// k(x_i, x_j) = exp(-||x_i - x_j||^2 / (2 sigma^2)) on the selected columns,
/// then centered on both sides.
CenteredKernel gaussian_centered_kernel(const DataMatrix& data,
                                        const std::vector<int>& cols,
                                        double width);

/// Same, on a raw point matrix (rows = samples).
CenteredKernel gaussian_centered_kernel(const Eigen::MatrixXd& points, double width);

/// Raw (uncentered) Gaussian kernel matrix.
Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& points, double width);

/// H M H for an arbitrary square matrix.
Eigen::MatrixXd center_matrix(const Eigen::MatrixXd& m);

}  // namespace kci
