#pragma once

#include <cstdint>
#include <functional>

#include "kci/data.hpp"
#include "kci/graph.hpp"

namespace kci {

enum class PnlCase { one_effective, all_effective };
enum class NoiseFamily { mixed, gaussian, uniform, laplace };

/// Post-nonlinear conditional-independence data: X = G(F(Z) + E). With
/// dependent = false, X and Y are conditionally independent given Z by
/// construction; dependent = true adds the same fresh variable to both.
struct PnlConfig {
  PnlCase pnl_case = PnlCase::one_effective;
  bool dependent = false;
  int cond_dim = 1;   // D
  int n = 200;
  NoiseFamily noise_family = NoiseFamily::mixed;  // per-draw random family
  std::uint64_t seed = 0;
};

/// a*u + b*u^3 + c*tanh(u). Coefficients i.i.d. uniform on [-1, 1]; the
/// `invertible` draw forces a, b, c to share a sign with |a| >= 0.2 so the
/// outer nonlinearity stays informative.
struct SmoothMixture {
  double a = 1.0, b = 0.0, c = 0.0;
  double operator()(double u) const;
};

SmoothMixture random_smooth_mixture(std::uint64_t seed, bool invertible = false);

/// Columns: X, Y, Z1..ZD.
DataMatrix gen_pnl(const PnlConfig& config);

/// Random upper-triangular DAG with GP-sampled functional relationships.
struct RandomDagConfig {
  int num_vars = 4;
  double edge_prob = 0.5;
  int n = 500;
  std::uint64_t seed = 0;
  double weight_lo = 0.1, weight_hi = 0.6;   // per-dimension kernel weights
  double coeff_lo = -2.0, coeff_hi = 2.0;    // linear mean coefficients
  double noise_sigma = 0.1;                  // noise-kernel amplitude
  bool weights_as_amplitudes = false;        // alternative kernel reading
};

struct RandomDagSample {
  std::vector<std::vector<bool>> dag;  // true at (i, j) iff i -> j
  Cpdag true_cpdag;
  DataMatrix data;
};

RandomDagSample gen_random_dag_data(const RandomDagConfig& config);

}  // namespace kci
