#pragma once

#include <Eigen/Core>

#include "kci/kernel.hpp"

namespace kci {

/// Truncated spectral factorization of a centered kernel: columns holds
/// psi with column i = sqrt(lambda_i) * v_i, so psi psi^T reconstructs the
/// kernel up to the dropped tail. Eigenvalues are descending, all >= the
/// truncation threshold.
struct EmpiricalFeatures {
  Eigen::MatrixXd columns;     // n x m
  Eigen::VectorXd eigenvalues; // m, descending
  double truncation = 0.0;

  Eigen::Index retained() const { return eigenvalues.size(); }
};

constexpr double kDefaultEigThreshold = 1e-5;

/// Symmetric EVD with negative eigenvalues clamped to 0 and components below
/// `threshold` dropped.
EmpiricalFeatures spectral_features(const CenteredKernel& kernel,
                                    double threshold = kDefaultEigThreshold);

EmpiricalFeatures spectral_features(const Eigen::MatrixXd& sym,
                                    double threshold = kDefaultEigThreshold);

}  // namespace kci
