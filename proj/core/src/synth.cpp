#include "kci/synth.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "kci/rng.hpp"

namespace kci {

double SmoothMixture::operator()(double u) const {
  return a * u + b * u * u * u + c * std::tanh(u);
}

SmoothMixture random_smooth_mixture(std::uint64_t seed, bool invertible) {
  auto rng = make_engine(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SmoothMixture f;
  f.a = unit(rng);
  f.b = unit(rng);
  f.c = unit(rng);
  if (invertible) {
    // same sign, |a| >= 0.2: strictly monotone, hence informative
    const double sign = f.a < 0.0 ? -1.0 : 1.0;
    f.a = sign * std::max(std::abs(f.a), 0.2);
    f.b = sign * std::abs(f.b);
    f.c = sign * std::abs(f.c);
  }
  return f;
}

namespace {

// Unit-variance noise: N(0,1), U[-sqrt3, sqrt3], or Laplace(0, 1/sqrt2).
Eigen::VectorXd draw_noise(std::mt19937_64& rng, int n, NoiseFamily family) {
  if (family == NoiseFamily::mixed) {
    std::uniform_int_distribution<int> pick(0, 2);
    family = static_cast<NoiseFamily>(pick(rng) + 1);
  }
  Eigen::VectorXd e(n);
  switch (family) {
    case NoiseFamily::gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int i = 0; i < n; ++i) e(i) = normal(rng);
      break;
    }
    case NoiseFamily::uniform: {
      const double s = std::sqrt(3.0);
      std::uniform_real_distribution<double> u(-s, s);
      for (int i = 0; i < n; ++i) e(i) = u(rng);
      break;
    }
    case NoiseFamily::laplace: {
      std::uniform_real_distribution<double> u(-0.5, 0.5);
      const double scale = 1.0 / std::sqrt(2.0);
      for (int i = 0; i < n; ++i) {
        const double v = u(rng);
        e(i) = -scale * std::copysign(std::log1p(-2.0 * std::abs(v)), v);
      }
      break;
    }
    default:
      throw std::logic_error("draw_noise: unreachable");
  }
  return e;
}

Eigen::VectorXd apply(const SmoothMixture& f, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out(i) = f(u(i));
  return out;
}

}  // namespace

DataMatrix gen_pnl(const PnlConfig& config) {
  if (config.cond_dim < 1) throw std::invalid_argument("gen_pnl: cond_dim must be >= 1");
  if (config.n < 10) throw std::invalid_argument("gen_pnl: n must be >= 10");
  const int n = config.n, d = config.cond_dim;

  auto rng = make_engine(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> sub;

  Eigen::MatrixXd z(n, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = normal(rng);

  const int effective = (config.pnl_case == PnlCase::one_effective) ? 1 : d;

  auto unit_scale = [](Eigen::VectorXd* v) {
    const double mean = v->mean();
    const double sd = std::sqrt((v->array() - mean).square().sum() /
                                static_cast<double>(v->size() - 1));
    if (sd > 1e-12) *v /= sd;
  };

  // Scale-normalized on both sides of G: the mixture coefficients can
  // compose into ~u^9 growth, which would swamp the shared dependence
  // variable. The factors depend only on this side's own inputs, so
  // X indep Y given Z is preserved.
  auto build_side = [&](Eigen::VectorXd* out) {
    Eigen::VectorXd signal = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < effective; ++j) {
      const SmoothMixture f = random_smooth_mixture(sub(rng), /*invertible=*/false);
      signal += apply(f, z.col(j));
    }
    unit_scale(&signal);
    signal += draw_noise(rng, n, config.noise_family);
    const SmoothMixture g = random_smooth_mixture(sub(rng), /*invertible=*/true);
    *out = apply(g, signal);
    unit_scale(out);
  };

  Eigen::VectorXd x, y;
  build_side(&x);
  build_side(&y);

  if (config.dependent) {
    Eigen::VectorXd shared(n);
    for (int i = 0; i < n; ++i) shared(i) = normal(rng);
    x += shared;
    y += shared;
  }

  DataMatrix data;
  data.values.resize(n, 2 + d);
  data.values.col(0) = x;
  data.values.col(1) = y;
  data.values.rightCols(d) = z;
  data.column_names = {"X", "Y"};
  for (int j = 1; j <= d; ++j) data.column_names.push_back("Z" + std::to_string(j));
  data.standardized = false;
  return data;
}

RandomDagSample gen_random_dag_data(const RandomDagConfig& config) {
  if (config.num_vars < 2)
    throw std::invalid_argument("gen_random_dag_data: num_vars must be >= 2");
  if (config.edge_prob < 0.0 || config.edge_prob > 1.0)
    throw std::invalid_argument("gen_random_dag_data: edge_prob must be in [0, 1]");
  const int d = config.num_vars, n = config.n;

  auto rng = make_engine(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> coeff(config.coeff_lo, config.coeff_hi);
  std::uniform_real_distribution<double> wdist(config.weight_lo, config.weight_hi);

  RandomDagSample out;
  out.dag.assign(d, std::vector<bool>(d, false));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      out.dag[i][j] = coin(rng) < config.edge_prob;

  Eigen::MatrixXd values(n, d);
  for (int j = 0; j < d; ++j) {
    std::vector<int> parents;
    for (int i = 0; i < j; ++i)
      if (out.dag[i][j]) parents.push_back(i);

    if (parents.empty()) {
      for (int i = 0; i < n; ++i) values(i, j) = normal(rng);
      continue;
    }

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd scaled(n, static_cast<Eigen::Index>(parents.size()));
    double wsum = 0.0;
    for (std::size_t p = 0; p < parents.size(); ++p) {
      mean += coeff(rng) * values.col(parents[p]);
      const double w = wdist(rng);
      wsum += w;
      // inverse-length-scale reading: the weight multiplies the coordinate
      // inside the exponent
      scaled.col(static_cast<Eigen::Index>(p)) =
          values.col(parents[p]) * (config.weights_as_amplitudes ? 1.0 : w);
    }

    const Eigen::VectorXd sq = scaled.rowwise().squaredNorm();
    Eigen::MatrixXd cov = sq.replicate(1, n) + sq.transpose().replicate(n, 1)
                        - 2.0 * scaled * scaled.transpose();
    cov = (-0.5 * cov.cwiseMax(0.0)).array().exp();
    if (config.weights_as_amplitudes) cov *= wsum / static_cast<double>(parents.size());
    cov.diagonal().array() += config.noise_sigma * config.noise_sigma;

    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
    for (int attempt = 0; attempt <= 3; ++attempt) {
      Eigen::MatrixXd c = cov;
      c.diagonal().array() += jitter;
      llt.compute(c);
      if (llt.info() == Eigen::Success) break;
      jitter = (jitter == 0.0) ? 1e-8 : 10.0 * jitter;
      if (attempt == 3)
        throw std::runtime_error("gen_random_dag_data: covariance factorization "
                                 "failed after jitter escalation");
    }

    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = normal(rng);
    values.col(j) = mean + llt.matrixL() * g;
  }

  if (values.lpNorm<Eigen::Infinity>() > 1e6)
    throw std::runtime_error("gen_random_dag_data: generated values exceed 1e6");

  std::vector<std::string> names;
  for (int j = 1; j <= d; ++j) names.push_back("X" + std::to_string(j));
  out.true_cpdag = cpdag_from_dag(out.dag, names);
  out.data.values = values;
  out.data.column_names = names;
  out.data.standardized = false;
  return out;
}

}  // namespace kci
