#include <benchmark/benchmark.h>

#include "jddgen/long_run.hpp"
#include "support/graphs.hpp"

using namespace jddgen;

static void BM_find_thinning_factor(benchmark::State& state) {
  const EdgeSeries s = testing::two_state_series(0.01, 0.01, static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(long_run::find_thinning_factor(s).k);
}
BENCHMARK(BM_find_thinning_factor)->Arg(1 << 16)->Arg(1 << 20);

static void BM_one_long_run(benchmark::State& state) {
  const Graph g = testing::clustered_ring(300, 3, 100, 7);
  long_run::LongRunConfig config;
  config.steps = 1024 * g.edge_count();
  config.seed = 2;
  for (auto _ : state) benchmark::DoNotOptimize(long_run::one_long_run(g, config).k_star);
}
BENCHMARK(BM_one_long_run)->Unit(benchmark::kMillisecond);
