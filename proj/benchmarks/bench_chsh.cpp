#include <benchmark/benchmark.h>

#include "gbsbell/chsh.hpp"

#include <numbers>

using namespace gbsbell;

static void BM_CorrelationOracle(benchmark::State& state) {
  const TwoCavityState s = entangled_gbs(2, 0.4, 0.4, 0.9, 0.9, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation_oracle(s, {0.2, 0.3}, {0.2, 1.7}));
  }
}
BENCHMARK(BM_CorrelationOracle);

static void BM_SurfaceScanDefaultGrids(benchmark::State& state) {
  const GridSpec degree_grid{0.0, 1.0, 101};
  const GridSpec theta_grid{0.0, 2.0 * std::numbers::pi, 201};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_sb_surface(0.0, std::numbers::pi / 4.0,
                                             std::numbers::pi / 2.0, degree_grid,
                                             theta_grid));
  }
}
BENCHMARK(BM_SurfaceScanDefaultGrids)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
