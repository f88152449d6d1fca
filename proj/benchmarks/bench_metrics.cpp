#include <benchmark/benchmark.h>

#include "jddgen/metrics.hpp"
#include "support/graphs.hpp"

using namespace jddgen;

namespace {
Graph sample_graph(std::int64_t n) {
  return testing::random_graph(static_cast<std::size_t>(n), 8.0 / static_cast<double>(n), 3);
}
}  // namespace

static void BM_triangles(benchmark::State& state) {
  const Graph g = sample_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(triangles(g));
}
BENCHMARK(BM_triangles)->Arg(300)->Arg(5000);

static void BM_diameter(benchmark::State& state) {
  const Graph g = sample_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(diameter(g));
}
BENCHMARK(BM_diameter)->Arg(300)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_lambda_max(benchmark::State& state) {
  const Graph g = sample_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_lambda_max(g).value);
}
BENCHMARK(BM_lambda_max)->Arg(300)->Arg(5000)->Unit(benchmark::kMillisecond);
