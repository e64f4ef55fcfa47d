#include "kci/null_dist.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

#include "kci/rng.hpp"

namespace kci {

double NullSpec::mean() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return scale * s;
}

double NullSpec::variance() const {
  double s2 = 0.0;
  for (double w : weights) s2 += w * w;
  return 2.0 * scale * scale * s2;
}

GammaFit fit_gamma(const NullSpec& spec) {
  GammaFit fit;
  fit.mean = spec.mean();
  const double var = spec.variance();
  if (var < 1e-300 || fit.mean <= 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.k = fit.mean * fit.mean / var;
  fit.theta = var / fit.mean;
  return fit;
}

double p_value_gamma(const GammaFit& fit, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("p_value_gamma: non-finite statistic");
  if (fit.degenerate) return t <= fit.mean ? 1.0 : 0.0;
  if (t <= 0.0) return 1.0;
  return boost::math::gamma_q(fit.k, t / fit.theta);
}

double p_value_mc(const NullSpec& spec, double t, int draws, std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("p_value_mc: draws must be >= 1");
  auto rng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  long exceed = 0;
  for (int r = 0; r < draws; ++r) {
    double acc = 0.0;
    for (double w : spec.weights) {
      const double z = normal(rng);
      acc += w * z * z;
    }
    if (spec.scale * acc >= t) ++exceed;
  }
  return static_cast<double>(1 + exceed) / static_cast<double>(1 + draws);
}

}  // namespace kci
