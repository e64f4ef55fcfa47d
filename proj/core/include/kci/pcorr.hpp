#pragma once

#include <vector>

#include "kci/data.hpp"

namespace kci {

/// Fisher-z test of the sample partial correlation rho_{xy.z}. Returns the
/// two-sided p-value 2(1 - Phi(sqrt(n - |z| - 3) |atanh rho|)).
double partial_correlation_test(const DataMatrix& data, int x, int y,
                                const std::vector<int>& z_cols);

/// The partial correlation itself, via correlation-matrix inversion. A
/// singular matrix gets one 1e-10 diagonal jitter retry.
double partial_correlation(const DataMatrix& data, int x, int y,
                           const std::vector<int>& z_cols);

}  // namespace kci
