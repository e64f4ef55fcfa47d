#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kci/synth.hpp"
#include "kci/test_config.hpp"

namespace kci {

/// Type I / Type II error-rate grid for the post-nonlinear generators.
/// Each replication draws an independent dataset (for Type I) and a
/// dependent one (for Type II) from derived seeds, so the table does not
/// depend on the worker count.
struct CalibrationConfig {
  std::vector<PnlCase> cases = {PnlCase::one_effective};
  std::vector<int> cond_dims = {1};
  std::vector<int> sample_sizes = {200};
  std::vector<double> alphas = {0.05};
  int replications = 300;
  NoiseFamily noise_family = NoiseFamily::mixed;
  TestConfig test;  // method, mc draws, thresholds
  std::uint64_t seed = 0;
  int workers = 1;
};

struct CalibrationRow {
  PnlCase pnl_case;
  int cond_dim;
  int n;
  double alpha;
  std::string method;  // "gamma" or "mc"
  double type1_rate;
  double type2_rate;
};

std::vector<CalibrationRow> run_calibration(const CalibrationConfig& config);

/// Markov-equivalence-class recovery rates of PC with different CI oracles
/// on random GP-DAG data.
struct DagBenchConfig {
  RandomDagConfig dag;            // num_vars, edge_prob, kernel weights
  std::vector<int> sample_sizes = {100, 400, 700};
  int num_dags = 100;
  double alpha = 0.01;
  std::vector<std::string> oracles = {"kci", "pcorr"};
  int max_cond = -1;
  TestConfig test;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct DagBenchRow {
  int n;
  std::string oracle;
  double recovery_rate;
};

struct DagBenchResult {
  std::vector<DagBenchRow> rows;
  bool nondecreasing_trend = false;  // Spearman(rate, n) > 0 for every oracle
};

DagBenchResult run_dag_bench(const DagBenchConfig& config);

std::string calibration_csv(const std::vector<CalibrationRow>& rows);
std::string dag_bench_csv(const DagBenchResult& result);

const char* pnl_case_name(PnlCase c);

}  // namespace kci
