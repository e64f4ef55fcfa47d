#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace kci {

/// Column-major table of continuous observations. Columns are variables,
/// rows are samples. After standardize() every non-constant column has zero
/// mean and unit sample variance (n-1 divisor); constant columns are all-zero.
struct DataMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> column_names;
  bool standardized = false;

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index d() const { return values.cols(); }

  /// Returns the n x k submatrix of the selected columns, in the given order.
  Eigen::MatrixXd select(const std::vector<int>& cols) const;

  int column_index(const std::string& name) const;  // -1 if absent
};

/// Zero-mean, unit-variance columns. Rejects non-finite entries (diagnostic
/// names the offending row/column) and inputs with fewer than 2 rows.
DataMatrix standardize(const Eigen::MatrixXd& raw,
                       std::vector<std::string> column_names = {});

DataMatrix standardize(const DataMatrix& data);

}  // namespace kci
