#include <benchmark/benchmark.h>

#include "gbsbell/measurement.hpp"

#include <numbers>

using namespace gbsbell;

static void BM_BellExperiment(benchmark::State& state) {
  SimConfig config;
  config.shots_per_setting = state.range(0);
  config.alpha = 0.9;
  config.seed = 42;
  config.eta = 1.0;
  config.angles = {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0,
                   3.0 * std::numbers::pi / 4.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_bell_experiment(config));
  }
  state.SetItemsProcessed(state.iterations() * config.shots_per_setting * 4);
}
BENCHMARK(BM_BellExperiment)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
