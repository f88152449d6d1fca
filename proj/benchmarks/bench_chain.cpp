#include <benchmark/benchmark.h>

#include "jddgen/chain.hpp"
#include "support/graphs.hpp"

using namespace jddgen;

static void BM_chain_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Chain chain(testing::clustered_ring(n, 5, n / 2, 1), 11);
  for (auto _ : state) benchmark::DoNotOptimize(chain.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_chain_step)->Arg(1000)->Arg(100000);

static void BM_ten_sweeps(benchmark::State& state) {
  const Graph g = testing::clustered_ring(300, 3, 100, 7);
  const std::uint64_t steps = 10 * g.edge_count();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Chain chain(g, ++seed);
    for (std::uint64_t t = 0; t < steps; ++t) chain.step();
    benchmark::DoNotOptimize(chain.graph().edge_count());
  }
}
BENCHMARK(BM_ten_sweeps)->Unit(benchmark::kMillisecond);
