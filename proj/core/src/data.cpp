#include "kci/data.hpp"

#include <cmath>
#include <stdexcept>

namespace kci {

Eigen::MatrixXd DataMatrix::select(const std::vector<int>& cols) const {
  Eigen::MatrixXd out(values.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= values.cols())
      throw std::out_of_range("column index " + std::to_string(cols[j]) +
                              " out of range (d=" + std::to_string(values.cols()) + ")");
    out.col(static_cast<Eigen::Index>(j)) = values.col(cols[j]);
  }
  return out;
}

int DataMatrix::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < column_names.size(); ++j)
    if (column_names[j] == name) return static_cast<int>(j);
  return -1;
}

DataMatrix standardize(const Eigen::MatrixXd& raw,
                       std::vector<std::string> column_names) {
  const Eigen::Index n = raw.rows(), d = raw.cols();
  if (n < 2) throw std::invalid_argument("standardize: need at least 2 rows, got " +
                                         std::to_string(n));
  if (d < 1) throw std::invalid_argument("standardize: need at least 1 column");
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (!std::isfinite(raw(i, j)))
        throw std::invalid_argument("standardize: non-finite entry at row " +
                                    std::to_string(i) + ", column " + std::to_string(j));

  DataMatrix out;
  out.values.resize(n, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mean = raw.col(j).mean();
    const Eigen::VectorXd centered = raw.col(j).array() - mean;
    const double var = centered.squaredNorm() / static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    if (sd <= 1e-13 * (1.0 + std::abs(mean))) {
      out.values.col(j).setZero();  // constant column
    } else {
      out.values.col(j) = centered / sd;
    }
  }
  if (column_names.empty()) {
    for (Eigen::Index j = 0; j < d; ++j)
      column_names.push_back("v" + std::to_string(j));
  }
  if (static_cast<Eigen::Index>(column_names.size()) != d)
    throw std::invalid_argument("standardize: column_names size mismatch");
  out.column_names = std::move(column_names);
  out.standardized = true;
  return out;
}

DataMatrix standardize(const DataMatrix& data) {
  if (data.standardized) return data;
  return standardize(data.values, data.column_names);
}

}  // namespace kci
