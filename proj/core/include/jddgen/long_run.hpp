#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "jddgen/chain.hpp"
#include "jddgen/graph.hpp"
#include "jddgen/random.hpp"

namespace jddgen::long_run {

/// Thinned series with fewer transitions than this are too short for a
/// meaningful 2x2 model comparison; the k search stops there.
inline constexpr std::uint64_t kMinThinnedTransitions = 64;

/// Counts x[i][j] of i -> j transitions between consecutive series elements.
struct ContingencyTable {
  std::array<std::array<std::uint64_t, 2>, 2> x{};

  std::uint64_t total() const noexcept { return x[0][0] + x[0][1] + x[1][0] + x[1][1]; }
  std::uint64_t row(int i) const noexcept { return x[i][0] + x[i][1]; }
  std::uint64_t col(int j) const noexcept { return x[0][j] + x[1][j]; }

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

/// Elements 0, k, 2k, ... of the series. Throws std::invalid_argument for
/// k == 0 or when fewer than two elements would remain.
EdgeSeries thin(const EdgeSeries& series, std::uint64_t k);

/// Throws std::invalid_argument for series shorter than two.
ContingencyTable contingency(const EdgeSeries& series);

/// Likelihood-ratio statistic of the independence model against the table,
/// -2 sum x_ij log(xhat_ij / x_ij) with xhat_ij = x_i+ x_+j / x_++. Empty
/// cells contribute zero, so a table with an empty row or column scores 0.
double g_squared(const ContingencyTable& table);

/// BIC(independent) - BIC(first-order Markov) = G^2 - log(x_++). The Markov
/// model reproduces the table exactly and carries one extra parameter.
/// Negative means the elements look independent. Throws for an empty table.
double delta_bic(const ContingencyTable& table);

/// Presence history of one pair over steps 0..length-1, stored as the steps
/// at which its state flips.
struct EdgeHistory {
  Edge pair;
  bool initial = false;
  std::vector<std::uint64_t> flips;
  std::uint64_t length = 0;

  bool state_at(std::uint64_t t) const;
  EdgeSeries materialize() const;
  /// Same as contingency(thin(materialize(), k)) in O(flips) time.
  ContingencyTable thinned_contingency(std::uint64_t k) const;
};

struct ThinningProbe {
  std::uint64_t k = 0;
  std::uint64_t transitions = 0;
  double delta_bic = 0.0;
};

struct ThinningResult {
  Edge pair;
  std::uint64_t k = 1;
  double delta_bic = 0.0;
  /// The series ran out (fewer than kMinThinnedTransitions transitions at 2k)
  /// before delta BIC turned negative; k is the last k that could be tested.
  bool exhausted = false;
  std::vector<ThinningProbe> trace;
};

/// Tests k = 1, 2, 4, ... and stops at the first k whose thinned series has
/// negative delta BIC. Throws std::invalid_argument below four elements.
ThinningResult find_thinning_factor(const EdgeSeries& series);
ThinningResult find_thinning_factor(const EdgeHistory& history);

/// Largest per-edge k. Throws std::invalid_argument for an empty set.
std::uint64_t global_thinning(std::span<const ThinningResult> results);

/// round(fraction * edge_count) pairs drawn uniformly without replacement
/// from `realized`, capped at its size, returned sorted. fraction == 1
/// returns every realized pair.
std::vector<Edge> sample_tracked_edges(std::span<const Edge> realized, double fraction,
                                       std::uint64_t edge_count, Rng& rng);

struct Autocorrelation {
  /// rho[l] for l = 0..max_lag; empty when degenerate.
  std::vector<double> rho;
  /// Constant series: C(0) = 0 and rho is undefined.
  bool degenerate = false;
};

/// C(l) = mean over t of (Z_t - mu)(Z_{t+l} - mu), rho(l) = C(l) / C(0).
Autocorrelation autocorrelation(const EdgeSeries& series, std::size_t max_lag);

struct LongRunConfig {
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  /// Tracked pairs as a fraction of |E|, drawn from every pair that is an
  /// edge at some point of the run. Ignored when `tracked` is given.
  double tracked_fraction = 0.1;
  std::vector<Edge> tracked;
  std::size_t max_samples = std::numeric_limits<std::size_t>::max();
  unsigned workers = 1;
};

struct LongRunResult {
  std::size_t realized_pairs = 0;
  std::vector<Edge> tracked;
  std::vector<ThinningResult> per_edge;
  std::uint64_t k_star = 0;
  std::uint64_t sample_count = 0;
  OutcomeTally tally;
};

/// Receives sample `index` taken at chain step `step`, in order.
using SampleSink = std::function<void(std::size_t index, std::uint64_t step, const Graph&)>;

/// One chain of config.steps steps from `initial`. Per-edge thinning
/// factors are computed for the tracked pairs and k_star is their maximum.
/// When `sink` is set, the graphs at steps k*, 2k*, ... <= K are delivered to
/// it (at most max_samples of them). The chain is replayed from its seed for
/// each pass, so nothing but the current graph is stored.
/// Throws ConfigError when steps < kMinThinnedTransitions or |E| < 2.
LongRunResult one_long_run(const Graph& initial, const LongRunConfig& config,
                           const SampleSink& sink = {});

}  // namespace jddgen::long_run
