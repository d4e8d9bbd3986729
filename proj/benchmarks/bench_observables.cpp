#include <benchmark/benchmark.h>

#include "gbsbell/entangled.hpp"
#include "gbsbell/field.hpp"

using namespace gbsbell;

static void BM_EntangledStateConstruction(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(entangled_gbs(2, 0.3, 0.6, 0.4, 1.1, 0.8));
  }
}
BENCHMARK(BM_EntangledStateConstruction);

static void BM_CovarianceOracle(benchmark::State& state) {
  const TwoCavityState s = entangled_gbs(2, 0.3, 0.6, 0.4, 1.1, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariance_oracle(s));
  }
}
BENCHMARK(BM_CovarianceOracle);

static void BM_CovarianceClosedForm(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariance_order2(0.3, 0.6, 0.4, 1.1, 0.8));
  }
}
BENCHMARK(BM_CovarianceClosedForm);

BENCHMARK_MAIN();
