#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "jddgen/graph.hpp"

namespace jddgen::short_runs {

/// Two-state chain for the presence of one vertex pair whose endpoints have
/// degrees (i, j): alpha is P(0 -> 1), beta is P(1 -> 0) per chain step.
/// The transition matrix [[1-alpha, alpha], [beta, 1-beta]] has eigenvalues
/// 1 and 1 - (alpha + beta).
struct TwoStateEdgeModel {
  double alpha = 0.0;
  double beta = 0.0;
  Degree i = 0;
  Degree j = 0;

  double rate() const noexcept { return alpha + beta; }
  double second_eigenvalue() const noexcept { return 1.0 - rate(); }
  /// alpha == 0: the pair's degree class has no edges, so it never appears.
  bool never_appears() const noexcept { return alpha == 0.0; }
};

/// alpha = J(i,j) / (2 m^2) * (i / f(j) + j / f(i))
/// beta  = 1 / m + (f(i) i + f(j) j - i - j) / (2 m^2)
/// Throws std::invalid_argument when f(i) or f(j) is zero or m is zero.
TwoStateEdgeModel edge_model(Degree i, Degree j, const JointDegreeMatrix& jdd,
                             const DegreeHistogram& f, std::uint64_t m);

struct StationaryDistribution {
  double p_no_edge = 0.0;
  double p_edge = 0.0;
};

/// (beta, alpha) / (alpha + beta). Throws std::domain_error if alpha + beta == 0.
StationaryDistribution stationary_distribution(const TwoStateEdgeModel& model);

/// ceil(m ln(1/epsilon)): steps that bring every pair within epsilon of
/// stationarity, since alpha + beta >= 1/m for all pairs.
/// Throws std::invalid_argument unless 0 < epsilon < 1.
std::uint64_t run_length(double epsilon, std::uint64_t m);

/// ceil(ln(1/epsilon) / (alpha + beta)) for one degree pair.
std::uint64_t per_edge_run_length(const TwoStateEdgeModel& model, double epsilon);

/// Called from worker threads with (chain index, final graph). Calls for
/// different indices may run concurrently.
using SampleVisitor = std::function<void(std::size_t, const Graph&)>;

/// Runs `samples` independent chains of `steps` steps from `initial`, chain c
/// seeded with seed_base + c, and hands each endpoint to `visit`.
void run_chains(const Graph& initial, std::size_t samples, std::uint64_t steps,
                std::uint64_t seed_base, unsigned workers, const SampleVisitor& visit);

/// The endpoints of `samples` chains of run_length(epsilon, m) steps, in chain
/// order.
std::vector<Graph> generate_ensemble(const Graph& initial, std::size_t samples, double epsilon,
                                     std::uint64_t seed_base, unsigned workers = 1);

}  // namespace jddgen::short_runs
