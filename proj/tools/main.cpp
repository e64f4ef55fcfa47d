// kci: kernel (conditional) independence testing, PC causal discovery, and
// the synthetic experiments around them.
//
// Exit codes: 0 ok, 2 bad arguments/validation, 3 I/O failure, 4 numeric
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "kci/ci_test.hpp"
#include "kci/experiments.hpp"
#include "kci/io.hpp"
#include "kci/pc.hpp"
#include "kci/synth.hpp"
#include "kci/ui_test.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0, kExitUsage = 2, kExitIo = 3, kExitNumeric = 4;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw kci::CsvError(kci::CsvErrorCode::missing_file,
                                "cannot write " + out_path);
  out << text << "\n";
}

kci::PValueMethod parse_method(const std::string& m) {
  if (m == "gamma") return kci::PValueMethod::gamma;
  if (m == "mc") return kci::PValueMethod::monte_carlo;
  if (m == "both") return kci::PValueMethod::both;
  throw CLI::ValidationError("--method must be gamma, mc, or both");
}

struct CommonOpts {
  double alpha = 0.05;
  std::string method = "gamma";
  int mc_draws = kci::kDefaultMcDraws;
  std::uint64_t seed = 0;
  std::string out;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--alpha", opts->alpha, "significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  cmd->add_option("--method", opts->method, "p-value method: gamma|mc|both")
      ->check(CLI::IsMember({"gamma", "mc", "both"}));
  cmd->add_option("--mc-draws", opts->mc_draws, "Monte-Carlo draw count")
      ->check(CLI::Range(100, 100000000));
  cmd->add_option("--seed", opts->seed, "RNG seed");
  cmd->add_option("--out", opts->out, "output path (stdout if omitted)");
  cmd->add_option("--workers", opts->workers, "worker threads (results unaffected)")
      ->check(CLI::Range(1, 256));
}

kci::TestConfig make_test_config(const CommonOpts& opts) {
  kci::TestConfig tc;
  tc.method = parse_method(opts.method);
  tc.mc_draws = opts.mc_draws;
  tc.seed = opts.seed;
  return tc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel-based (conditional) independence tests and PC causal discovery"};
  app.require_subcommand(1);

  // ---- test-ui / test-ci ----
  CommonOpts test_opts;
  std::string csv_path;
  std::vector<std::string> x_sel, y_sel, z_sel;

  auto* ui_cmd = app.add_subcommand("test-ui", "unconditional independence test");
  ui_cmd->add_option("csv", csv_path, "input CSV (header required)")->required();
  ui_cmd->add_option("--x", x_sel, "X columns (names or 0-based indices)")->required();
  ui_cmd->add_option("--y", y_sel, "Y columns")->required();
  add_common(ui_cmd, &test_opts);

  auto* ci_cmd = app.add_subcommand("test-ci", "conditional independence test");
  ci_cmd->add_option("csv", csv_path, "input CSV (header required)")->required();
  ci_cmd->add_option("--x", x_sel, "X columns")->required();
  ci_cmd->add_option("--y", y_sel, "Y columns")->required();
  ci_cmd->add_option("--z", z_sel, "conditioning columns (may be empty)");
  add_common(ci_cmd, &test_opts);

  // ---- pc ----
  CommonOpts pc_opts;
  std::string pc_csv, pc_oracle = "kci", dot_path;
  int max_cond = -1;
  auto* pc_cmd = app.add_subcommand("pc", "PC causal discovery (CPDAG output)");
  pc_cmd->add_option("csv", pc_csv, "input CSV")->required();
  pc_cmd->add_option("--oracle", pc_oracle, "CI oracle: kci|pcorr")
      ->check(CLI::IsMember({"kci", "pcorr"}));
  pc_cmd->add_option("--max-cond", max_cond, "max conditioning-set size (-1 = d-2)");
  pc_cmd->add_option("--dot", dot_path, "also write the graph as DOT text");
  add_common(pc_cmd, &pc_opts);

  // ---- gen ----
  CommonOpts gen_opts;
  std::string gen_kind = "pnl", gen_case = "one_effective", gen_noise = "mixed";
  bool gen_dependent = false;
  int gen_d = 1, gen_n = 200, gen_vars = 4;
  double gen_edge_prob = 0.5;
  auto* gen_cmd = app.add_subcommand("gen", "generate synthetic data as CSV + sidecar JSON");
  gen_cmd->add_option("--kind", gen_kind, "pnl|dag")->check(CLI::IsMember({"pnl", "dag"}));
  gen_cmd->add_option("--case", gen_case, "pnl case: one_effective|all_effective")
      ->check(CLI::IsMember({"one_effective", "all_effective"}));
  gen_cmd->add_flag("--dependent", gen_dependent, "add the shared variable to X and Y");
  gen_cmd->add_option("--cond-dim", gen_d, "conditioning dimension D")->check(CLI::Range(1, 100));
  gen_cmd->add_option("--n", gen_n, "sample size")->check(CLI::Range(10, 10000000));
  gen_cmd->add_option("--noise", gen_noise, "mixed|gaussian|uniform|laplace")
      ->check(CLI::IsMember({"mixed", "gaussian", "uniform", "laplace"}));
  gen_cmd->add_option("--num-vars", gen_vars, "DAG variable count")->check(CLI::Range(2, 100));
  gen_cmd->add_option("--edge-prob", gen_edge_prob, "DAG edge probability")
      ->check(CLI::Range(0.0, 1.0));
  add_common(gen_cmd, &gen_opts);

  // ---- calibrate ----
  CommonOpts cal_opts;
  std::vector<std::string> cal_cases = {"one_effective"};
  std::vector<int> cal_dims = {1}, cal_sizes = {200};
  std::vector<double> cal_alphas = {0.05};
  int cal_reps = 300;
  auto* cal_cmd = app.add_subcommand("calibrate", "Type I/II error-rate table (CSV)");
  cal_cmd->add_option("--case", cal_cases, "pnl cases: one_effective|all_effective")
      ->check(CLI::IsMember({"one_effective", "all_effective"}));
  cal_cmd->add_option("--cond-dim", cal_dims, "conditioning dimensions D");
  cal_cmd->add_option("--n", cal_sizes, "sample sizes");
  cal_cmd->add_option("--alphas", cal_alphas, "significance levels");
  cal_cmd->add_option("--replications", cal_reps, "replications per cell")
      ->check(CLI::Range(1, 1000000));
  add_common(cal_cmd, &cal_opts);

  // ---- dag-bench ----
  CommonOpts bench_opts;
  std::vector<int> bench_sizes = {100, 400, 700};
  std::vector<std::string> bench_oracles = {"kci", "pcorr"};
  int bench_dags = 100, bench_vars = 4, bench_max_cond = -1;
  double bench_edge_prob = 0.5;
  auto* bench_cmd = app.add_subcommand("dag-bench",
                                       "Markov-equivalence recovery benchmark (CSV)");
  bench_cmd->add_option("--n", bench_sizes, "sample sizes");
  bench_cmd->add_option("--num-dags", bench_dags, "DAGs per sample size")
      ->check(CLI::Range(1, 100000));
  bench_cmd->add_option("--num-vars", bench_vars, "variables per DAG")
      ->check(CLI::Range(2, 100));
  bench_cmd->add_option("--edge-prob", bench_edge_prob, "edge probability")
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--oracle", bench_oracles, "oracles: kci and/or pcorr")
      ->check(CLI::IsMember({"kci", "pcorr"}));
  bench_cmd->add_option("--max-cond", bench_max_cond, "max conditioning-set size");
  bench_opts.alpha = 0.01;
  add_common(bench_cmd, &bench_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the error message
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ui_cmd->parsed() || ci_cmd->parsed()) {
      const bool conditional = ci_cmd->parsed();
      const auto ingest = kci::ingest_csv(csv_path, {});
      const auto x = kci::resolve_columns(ingest.data, x_sel);
      const auto y = kci::resolve_columns(ingest.data, y_sel);
      const auto z = kci::resolve_columns(ingest.data, z_sel);
      const kci::TestConfig tc = make_test_config(test_opts);

      std::string report;
      if (conditional) {
        report = kci::report_to_json(kci::ci_test(ingest.data, x, y, z, tc), "test-ci");
      } else {
        report = kci::report_to_json(kci::ui_test(ingest.data, x, y, tc), "test-ui");
      }
      if (ingest.dropped_rows > 0)
        std::cerr << "note: dropped " << ingest.dropped_rows
                  << " rows with missing/non-numeric values\n";
      emit(report, test_opts.out);
      return kExitOk;
    }

    if (pc_cmd->parsed()) {
      const auto ingest = kci::ingest_csv(pc_csv, {});
      std::unique_ptr<kci::CiOracle> oracle;
      if (pc_oracle == "kci")
        oracle = std::make_unique<kci::KciOracle>(make_test_config(pc_opts));
      else
        oracle = std::make_unique<kci::PcorrOracle>();
      const kci::Cpdag g = kci::run_pc(ingest.data, *oracle, pc_opts.alpha, max_cond);
      emit(kci::to_json(g), pc_opts.out);
      if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        if (!dot) throw kci::CsvError(kci::CsvErrorCode::missing_file,
                                      "cannot write " + dot_path);
        dot << kci::to_dot(g);
      }
      return kExitOk;
    }

    if (gen_cmd->parsed()) {
      if (gen_opts.out.empty())
        throw CLI::ValidationError("gen requires --out (CSV path)");
      json sidecar;
      sidecar["schema_version"] = 1;
      sidecar["command"] = "gen";
      sidecar["seed"] = gen_opts.seed;
      if (gen_kind == "pnl") {
        kci::PnlConfig cfg;
        cfg.pnl_case = gen_case == "one_effective" ? kci::PnlCase::one_effective
                                                   : kci::PnlCase::all_effective;
        cfg.dependent = gen_dependent;
        cfg.cond_dim = gen_d;
        cfg.n = gen_n;
        cfg.seed = gen_opts.seed;
        if (gen_noise == "gaussian") cfg.noise_family = kci::NoiseFamily::gaussian;
        else if (gen_noise == "uniform") cfg.noise_family = kci::NoiseFamily::uniform;
        else if (gen_noise == "laplace") cfg.noise_family = kci::NoiseFamily::laplace;
        kci::write_csv(gen_opts.out, kci::gen_pnl(cfg));
        sidecar["kind"] = "pnl";
        sidecar["case"] = gen_case;
        sidecar["dependent"] = gen_dependent;
        sidecar["cond_dim"] = gen_d;
        sidecar["n"] = gen_n;
        sidecar["noise"] = gen_noise;
        sidecar["ground_truth"] =
            gen_dependent ? "X dependent on Y given Z" : "X independent of Y given Z";
      } else {
        kci::RandomDagConfig cfg;
        cfg.num_vars = gen_vars;
        cfg.edge_prob = gen_edge_prob;
        cfg.n = gen_n;
        cfg.seed = gen_opts.seed;
        const auto sample = kci::gen_random_dag_data(cfg);
        kci::write_csv(gen_opts.out, sample.data);
        sidecar["kind"] = "dag";
        sidecar["num_vars"] = gen_vars;
        sidecar["edge_prob"] = gen_edge_prob;
        sidecar["n"] = gen_n;
        sidecar["ground_truth"] = json::parse(kci::to_json(sample.true_cpdag));
      }
      std::ofstream side(gen_opts.out + ".json");
      if (!side) throw kci::CsvError(kci::CsvErrorCode::missing_file,
                                     "cannot write " + gen_opts.out + ".json");
      side << sidecar.dump(2) << "\n";
      return kExitOk;
    }

    if (cal_cmd->parsed()) {
      kci::CalibrationConfig cfg;
      cfg.cases.clear();
      for (const auto& c : cal_cases)
        cfg.cases.push_back(c == "one_effective" ? kci::PnlCase::one_effective
                                                 : kci::PnlCase::all_effective);
      cfg.cond_dims = cal_dims;
      cfg.sample_sizes = cal_sizes;
      cfg.alphas = cal_alphas;
      cfg.replications = cal_reps;
      cfg.test = make_test_config(cal_opts);
      cfg.seed = cal_opts.seed;
      cfg.workers = cal_opts.workers;
      emit(kci::calibration_csv(kci::run_calibration(cfg)), cal_opts.out);
      return kExitOk;
    }

    if (bench_cmd->parsed()) {
      kci::DagBenchConfig cfg;
      cfg.dag.num_vars = bench_vars;
      cfg.dag.edge_prob = bench_edge_prob;
      cfg.sample_sizes = bench_sizes;
      cfg.num_dags = bench_dags;
      cfg.alpha = bench_opts.alpha;
      cfg.oracles = bench_oracles;
      cfg.max_cond = bench_max_cond;
      cfg.test = make_test_config(bench_opts);
      cfg.seed = bench_opts.seed;
      cfg.workers = bench_opts.workers;
      emit(kci::dag_bench_csv(kci::run_dag_bench(cfg)), bench_opts.out);
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kci::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
