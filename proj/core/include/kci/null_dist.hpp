#pragma once

#include <cstdint>
#include <vector>

namespace kci {

/// Weighted chi-square mixture: scale * sum_i weights[i] * z_i^2 with z_i
/// i.i.d. standard normal. An empty weight list is a point mass at 0.
struct NullSpec {
  std::vector<double> weights;
  double scale = 1.0;

  double mean() const;
  double variance() const;
};

/// Two-parameter Gamma matched to the mixture's mean and variance.
/// k = mean^2 / variance, theta = variance / mean.
struct GammaFit {
  double k = 0.0;
  double theta = 0.0;
  double mean = 0.0;
  bool degenerate = false;
};

GammaFit fit_gamma(const NullSpec& spec);

/// Upper-tail probability 1 - CDF_Gamma(k, theta)(t). A degenerate fit
/// returns 1 if t <= mean, else 0.
double p_value_gamma(const GammaFit& fit, double t);

/// Monte-Carlo upper tail: (1 + #{draws >= t}) / (1 + draws). Deterministic
/// given the seed; never exactly 0.
double p_value_mc(const NullSpec& spec, double t, int draws, std::uint64_t seed);

constexpr int kDefaultMcDraws = 5000;

}  // namespace kci
