#include <benchmark/benchmark.h>

#include "kci/ci_test.hpp"
#include "kci/synth.hpp"
#include "kci/ui_test.hpp"

namespace {

kci::DataMatrix make_data(int n, int d) {
  kci::PnlConfig cfg;
  cfg.n = n;
  cfg.cond_dim = d;
  cfg.seed = 42;
  return kci::gen_pnl(cfg);
}

void BM_CenteredKernel(benchmark::State& state) {
  const auto data = kci::standardize(make_data(static_cast<int>(state.range(0)), 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(kci::gaussian_centered_kernel(data, {0}, 0.5));
}
BENCHMARK(BM_CenteredKernel)->Arg(200)->Arg(400)->Arg(800);

void BM_UiTest(benchmark::State& state) {
  const auto data = make_data(static_cast<int>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(kci::ui_test(data, {0}, {1}));
}
BENCHMARK(BM_UiTest)->Arg(200)->Arg(400);

void BM_CiTest(benchmark::State& state) {
  const auto data = make_data(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)));
  std::vector<int> z;
  for (int j = 0; j < state.range(1); ++j) z.push_back(2 + j);
  for (auto _ : state)
    benchmark::DoNotOptimize(kci::ci_test(data, {0}, {1}, z));
}
BENCHMARK(BM_CiTest)->Args({200, 1})->Args({400, 1})->Args({400, 3});

}  // namespace

BENCHMARK_MAIN();
