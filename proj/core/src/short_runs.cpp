#include "jddgen/short_runs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jddgen/chain.hpp"
#include "jddgen/parallel.hpp"

namespace jddgen::short_runs {

namespace {

// Ceiling that ignores floating error just above an integer, so that
// epsilon = e^-1 gives exactly m steps and epsilon -> 1 gives zero.
std::uint64_t ceil_steps(double x) {
  const double below = std::floor(x);
  if (x - below <= 1e-9 * std::max(1.0, x)) return static_cast<std::uint64_t>(below);
  return static_cast<std::uint64_t>(std::ceil(x));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

}  // namespace

TwoStateEdgeModel edge_model(Degree i, Degree j, const JointDegreeMatrix& jdd,
                             const DegreeHistogram& f, std::uint64_t m) {
  auto count = [&](Degree d) -> double {
    auto it = f.find(d);
    if (it == f.end() || it->second == 0) {
      throw std::invalid_argument("no vertices of degree " + std::to_string(d));
    }
    return static_cast<double>(it->second);
  };
  if (m == 0) throw std::invalid_argument("edge model needs m > 0");
  const double fi = count(i);
  const double fj = count(j);
  const double di = i;
  const double dj = j;
  const double mm = static_cast<double>(m);
  const double two_m2 = 2.0 * mm * mm;

  TwoStateEdgeModel model;
  model.i = i;
  model.j = j;
  model.alpha = static_cast<double>(jdd.at(i, j)) / two_m2 * (di / fj + dj / fi);
  model.beta = 1.0 / mm + (fi * di + fj * dj - di - dj) / two_m2;
  return model;
}

StationaryDistribution stationary_distribution(const TwoStateEdgeModel& model) {
  const double s = model.rate();
  if (!(s > 0.0)) throw std::domain_error("two-state model with alpha + beta = 0");
  return {model.beta / s, model.alpha / s};
}

std::uint64_t run_length(double epsilon, std::uint64_t m) {
  check_epsilon(epsilon);
  return ceil_steps(static_cast<double>(m) * std::log(1.0 / epsilon));
}

std::uint64_t per_edge_run_length(const TwoStateEdgeModel& model, double epsilon) {
  check_epsilon(epsilon);
  const double s = model.rate();
  if (!(s > 0.0)) throw std::domain_error("two-state model with alpha + beta = 0");
  return ceil_steps(std::log(1.0 / epsilon) / s);
}

void run_chains(const Graph& initial, std::size_t samples, std::uint64_t steps,
                std::uint64_t seed_base, unsigned workers, const SampleVisitor& visit) {
  parallel_for(samples, workers, [&](std::size_t c) {
    Chain chain(initial, seed_base + c);
    for (std::uint64_t t = 0; t < steps; ++t) chain.step();
    visit(c, chain.graph());
  });
}

std::vector<Graph> generate_ensemble(const Graph& initial, std::size_t samples, double epsilon,
                                     std::uint64_t seed_base, unsigned workers) {
  const std::uint64_t steps = run_length(epsilon, initial.edge_count());
  std::vector<Graph> out(samples);
  run_chains(initial, samples, steps, seed_base, workers,
             [&](std::size_t c, const Graph& g) { out[c] = g; });
  return out;
}

}  // namespace jddgen::short_runs
