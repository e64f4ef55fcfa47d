#include "kci/experiments.hpp"

#include <atomic>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kci/ci_test.hpp"
#include "kci/pc.hpp"
#include "kci/rng.hpp"

namespace kci {

namespace {

// Runs tasks [0, count) on `workers` threads. Each task writes only its own
// slot, so scheduling cannot change results.
void parallel_for(long count, int workers, const std::function<void(long)>& task) {
  workers = std::max(1, workers);
  if (workers == 1) {
    for (long i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

const char* pnl_case_name(PnlCase c) {
  return c == PnlCase::one_effective ? "one_effective" : "all_effective";
}

std::vector<CalibrationRow> run_calibration(const CalibrationConfig& config) {
  if (config.replications < 1)
    throw std::invalid_argument("run_calibration: replications must be >= 1");

  std::vector<CalibrationRow> rows;
  std::uint64_t cell = 0;
  for (PnlCase pnl_case : config.cases)
    for (int cond_dim : config.cond_dims)
      for (int n : config.sample_sizes) {
        ++cell;
        const long reps = config.replications;
        // p-values per replication: [gamma/mc][independent/dependent]
        std::vector<double> pg_ind(reps), pm_ind(reps), pg_dep(reps), pm_dep(reps);

        parallel_for(reps, config.workers, [&](long r) {
          for (int dep = 0; dep < 2; ++dep) {
            PnlConfig pnl;
            pnl.pnl_case = pnl_case;
            pnl.dependent = dep == 1;
            pnl.cond_dim = cond_dim;
            pnl.n = n;
            pnl.noise_family = config.noise_family;
            pnl.seed = derive_seed(config.seed, cell * 1000003ULL +
                                   static_cast<std::uint64_t>(2 * r + dep));
            const DataMatrix data = gen_pnl(pnl);

            TestConfig tc = config.test;
            tc.method = PValueMethod::both;
            tc.seed = derive_seed(pnl.seed, 1);

            std::vector<int> z_cols;
            for (int j = 0; j < cond_dim; ++j) z_cols.push_back(2 + j);
            const CITestReport rep = ci_test(data, {0}, {1}, z_cols, tc);
            (dep ? pg_dep : pg_ind)[r] = *rep.p_gamma;
            (dep ? pm_dep : pm_ind)[r] = *rep.p_mc;
          }
        });

        for (double alpha : config.alphas) {
          auto rate = [&](const std::vector<double>& ps) {
            long rej = 0;
            for (double p : ps) rej += p < alpha ? 1 : 0;
            return static_cast<double>(rej) / static_cast<double>(ps.size());
          };
          const bool want_gamma = config.test.method != PValueMethod::monte_carlo;
          const bool want_mc = config.test.method != PValueMethod::gamma;
          if (want_gamma)
            rows.push_back({pnl_case, cond_dim, n, alpha, "gamma",
                            rate(pg_ind), 1.0 - rate(pg_dep)});
          if (want_mc)
            rows.push_back({pnl_case, cond_dim, n, alpha, "mc",
                            rate(pm_ind), 1.0 - rate(pm_dep)});
        }
      }
  return rows;
}

DagBenchResult run_dag_bench(const DagBenchConfig& config) {
  if (config.num_dags < 1)
    throw std::invalid_argument("run_dag_bench: num_dags must be >= 1");
  if (config.dag.num_vars < 2)
    throw std::invalid_argument("run_dag_bench: num_vars must be >= 2");

  DagBenchResult result;
  std::vector<std::vector<double>> rates_per_oracle(config.oracles.size());

  for (std::size_t ni = 0; ni < config.sample_sizes.size(); ++ni) {
    const int n = config.sample_sizes[ni];
    std::vector<std::vector<char>> hits(
        config.oracles.size(), std::vector<char>(config.num_dags, 0));

    parallel_for(config.num_dags, config.workers, [&](long k) {
      RandomDagConfig dag_cfg = config.dag;
      dag_cfg.n = n;
      dag_cfg.seed = derive_seed(config.seed, (ni + 1) * 1000003ULL +
                                 static_cast<std::uint64_t>(k));
      const RandomDagSample sample = gen_random_dag_data(dag_cfg);

      for (std::size_t oi = 0; oi < config.oracles.size(); ++oi) {
        std::unique_ptr<CiOracle> oracle;
        if (config.oracles[oi] == "kci") {
          TestConfig tc = config.test;
          tc.seed = derive_seed(dag_cfg.seed, 2 + oi);
          oracle = std::make_unique<KciOracle>(tc);
        } else if (config.oracles[oi] == "pcorr") {
          oracle = std::make_unique<PcorrOracle>();
        } else {
          throw std::invalid_argument("run_dag_bench: unknown oracle '" +
                                      config.oracles[oi] + "'");
        }
        const Cpdag inferred =
            run_pc(standardize(sample.data), *oracle, config.alpha, config.max_cond);
        hits[oi][k] = markov_equivalent(inferred, sample.true_cpdag) ? 1 : 0;
      }
    });

    for (std::size_t oi = 0; oi < config.oracles.size(); ++oi) {
      long h = 0;
      for (char c : hits[oi]) h += c;
      const double rate = static_cast<double>(h) / config.num_dags;
      result.rows.push_back({n, config.oracles[oi], rate});
      rates_per_oracle[oi].push_back(rate);
    }
  }

  // monotone-trend summary: recovery should not get worse with more data
  result.nondecreasing_trend = true;
  for (const auto& rates : rates_per_oracle) {
    double spearman_num = 0.0;
    for (std::size_t a = 0; a < rates.size(); ++a)
      for (std::size_t b = a + 1; b < rates.size(); ++b)
        spearman_num += (rates[b] > rates[a]) ? 1.0 : (rates[b] < rates[a] ? -1.0 : 0.0);
    if (rates.size() > 1 && spearman_num <= 0.0) result.nondecreasing_trend = false;
  }
  return result;
}

std::string calibration_csv(const std::vector<CalibrationRow>& rows) {
  std::ostringstream os;
  os << "case,D,n,alpha,method,type1_rate,type2_rate\n";
  for (const auto& r : rows)
    os << pnl_case_name(r.pnl_case) << ',' << r.cond_dim << ',' << r.n << ','
       << r.alpha << ',' << r.method << ',' << r.type1_rate << ','
       << r.type2_rate << "\n";
  return os.str();
}

std::string dag_bench_csv(const DagBenchResult& result) {
  std::ostringstream os;
  os << "n,oracle,recovery_rate\n";
  for (const auto& r : result.rows)
    os << r.n << ',' << r.oracle << ',' << r.recovery_rate << "\n";
  os << "# nondecreasing_trend=" << (result.nondecreasing_trend ? "true" : "false")
     << "\n";
  return os.str();
}

}  // namespace kci
