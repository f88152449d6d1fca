#include "jddgen/long_run.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "jddgen/parallel.hpp"

namespace jddgen::long_run {

EdgeSeries thin(const EdgeSeries& series, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("thinning factor must be at least 1");
  const std::uint64_t length = series.values.size();
  if (length == 0 || (length - 1) / k + 1 < 2) {
    throw std::invalid_argument("series is over-thinned: fewer than two elements remain");
  }
  EdgeSeries out;
  out.pair = series.pair;
  out.values.reserve((length - 1) / k + 1);
  for (std::uint64_t t = 0; t < length; t += k) out.values.push_back(series.values[t]);
  return out;
}

ContingencyTable contingency(const EdgeSeries& series) {
  if (series.values.size() < 2) throw std::invalid_argument("contingency needs two elements");
  ContingencyTable table;
  for (std::size_t t = 1; t < series.values.size(); ++t) {
    ++table.x[series.values[t - 1] != 0][series.values[t] != 0];
  }
  return table;
}

double g_squared(const ContingencyTable& table) {
  const double total = static_cast<double>(table.total());
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (table.x[i][j] == 0) continue;
      const double observed = static_cast<double>(table.x[i][j]);
      const double expected =
          static_cast<double>(table.row(i)) * static_cast<double>(table.col(j)) / total;
      sum += observed * std::log(expected / observed);
    }
  }
  return -2.0 * sum;
}

double delta_bic(const ContingencyTable& table) {
  if (table.total() == 0) throw std::invalid_argument("delta BIC of an empty table");
  return g_squared(table) - std::log(static_cast<double>(table.total()));
}

bool EdgeHistory::state_at(std::uint64_t t) const {
  const auto flipped = std::upper_bound(flips.begin(), flips.end(), t) - flips.begin();
  return initial != (flipped % 2 == 1);
}

EdgeSeries EdgeHistory::materialize() const {
  EdgeSeries out;
  out.pair = pair;
  out.values.resize(length);
  bool state = initial;
  auto next = flips.begin();
  for (std::uint64_t t = 0; t < length; ++t) {
    while (next != flips.end() && *next == t) {
      state = !state;
      ++next;
    }
    out.values[t] = state ? 1 : 0;
  }
  return out;
}

ContingencyTable EdgeHistory::thinned_contingency(std::uint64_t k) const {
  ContingencyTable table;
  if (length == 0 || k == 0) return table;
  int previous = -1;
  bool state = initial;
  std::uint64_t run_start = 0;
  for (std::size_t r = 0; r <= flips.size(); ++r) {
    const std::uint64_t run_end = r < flips.size() ? std::min(flips[r], length) : length;
    if (run_end > run_start) {
      const std::uint64_t first = (run_start + k - 1) / k * k;
      if (first < run_end) {
        const std::uint64_t last = (run_end - 1) / k * k;
        const std::uint64_t samples = (last - first) / k + 1;
        const int s = state ? 1 : 0;
        if (previous >= 0) ++table.x[previous][s];
        table.x[s][s] += samples - 1;
        previous = s;
      }
    }
    state = !state;
    run_start = run_end;
    if (run_start >= length) break;
  }
  return table;
}

namespace {

template <typename TableAt>
ThinningResult search_thinning(Edge pair, std::uint64_t length, TableAt&& table_at) {
  if (length < 4) throw std::invalid_argument("series too short to test k = 1");
  ThinningResult result;
  result.pair = pair;
  for (std::uint64_t k = 1;; k *= 2) {
    const std::uint64_t transitions = (length - 1) / k;
    if (k > 1 && transitions < kMinThinnedTransitions) {
      result.exhausted = true;
      return result;
    }
    const double score = delta_bic(table_at(k));
    result.trace.push_back({k, transitions, score});
    result.k = k;
    result.delta_bic = score;
    if (score < 0.0) return result;
  }
}

}  // namespace

ThinningResult find_thinning_factor(const EdgeSeries& series) {
  return search_thinning(series.pair, series.values.size(), [&](std::uint64_t k) {
    return k == 1 ? contingency(series) : contingency(thin(series, k));
  });
}

ThinningResult find_thinning_factor(const EdgeHistory& history) {
  return search_thinning(history.pair, history.length,
                         [&](std::uint64_t k) { return history.thinned_contingency(k); });
}

std::uint64_t global_thinning(std::span<const ThinningResult> results) {
  if (results.empty()) throw std::invalid_argument("global thinning over no edges");
  std::uint64_t best = 0;
  for (const auto& r : results) best = std::max(best, r.k);
  return best;
}

std::vector<Edge> sample_tracked_edges(std::span<const Edge> realized, double fraction,
                                       std::uint64_t edge_count, Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("tracked fraction must lie in (0, 1]");
  }
  if (realized.empty()) throw std::invalid_argument("no realized pairs to sample from");
  std::vector<Edge> pool(realized.begin(), realized.end());
  std::sort(pool.begin(), pool.end());
  if (fraction == 1.0) return pool;
  const auto wanted = static_cast<std::uint64_t>(std::llround(fraction * static_cast<double>(edge_count)));
  const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(wanted, pool.size()));
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(rng.index(pool.size() - i));
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

Autocorrelation autocorrelation(const EdgeSeries& series, std::size_t max_lag) {
  const std::size_t length = series.values.size();
  if (max_lag >= length) throw std::invalid_argument("max_lag must be below the series length");
  double mean = 0.0;
  for (auto z : series.values) mean += z;
  mean /= static_cast<double>(length);

  auto covariance = [&](std::size_t lag) {
    double sum = 0.0;
    for (std::size_t t = 0; t + lag < length; ++t) {
      sum += (series.values[t] - mean) * (series.values[t + lag] - mean);
    }
    return sum / static_cast<double>(length - lag);
  };

  Autocorrelation out;
  const double c0 = covariance(0);
  if (c0 <= 0.0) {
    out.degenerate = true;
    return out;
  }
  out.rho.resize(max_lag + 1);
  out.rho[0] = 1.0;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) out.rho[lag] = covariance(lag) / c0;
  return out;
}

namespace {

constexpr std::uint64_t kSelectionStream = 0x747261636b6564ULL;

std::vector<Edge> realized_pairs(const Graph& initial, const LongRunConfig& config) {
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : initial.edges()) seen.insert(edge_key(e));
  Chain chain(initial, config.seed);
  for (std::uint64_t t = 0; t < config.steps; ++t) {
    const StepOutcome outcome = chain.step();
    if (outcome.tag != StepTag::Accepted) continue;
    seen.insert(edge_key(outcome.proposal->first_replacement()));
    seen.insert(edge_key(outcome.proposal->second_replacement()));
  }
  std::vector<Edge> out;
  out.reserve(seen.size());
  for (std::uint64_t key : seen) {
    out.push_back({static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffULL)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeHistory> record_histories(const Graph& initial, const LongRunConfig& config,
                                          std::span<const Edge> tracked, OutcomeTally& tally) {
  std::vector<EdgeHistory> histories(tracked.size());
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    histories[i].pair = tracked[i];
    histories[i].initial = initial.has_edge(tracked[i].u, tracked[i].v);
    histories[i].length = config.steps + 1;
    index.emplace(edge_key(tracked[i]), i);
  }
  Chain chain(initial, config.seed);
  for (std::uint64_t t = 1; t <= config.steps; ++t) {
    const StepOutcome outcome = chain.step();
    if (outcome.tag != StepTag::Accepted) continue;
    const SwapProposal& p = *outcome.proposal;
    for (Edge changed : {p.first_edge(), p.second_edge(), p.first_replacement(), p.second_replacement()}) {
      auto it = index.find(edge_key(changed));
      if (it != index.end()) histories[it->second].flips.push_back(t);
    }
  }
  tally = chain.tally();
  return histories;
}

}  // namespace

LongRunResult one_long_run(const Graph& initial, const LongRunConfig& config, const SampleSink& sink) {
  if (initial.edge_count() < 2) throw ConfigError("swap chain needs at least two edges");
  if (config.steps < kMinThinnedTransitions) {
    throw ConfigError("long run of " + std::to_string(config.steps) +
                      " steps is too short for a thinning search (need at least " +
                      std::to_string(kMinThinnedTransitions) + ")");
  }

  LongRunResult result;
  if (config.tracked.empty()) {
    const auto realized = realized_pairs(initial, config);
    result.realized_pairs = realized.size();
    Rng selection(config.seed ^ kSelectionStream);
    result.tracked = sample_tracked_edges(realized, config.tracked_fraction, initial.edge_count(), selection);
  } else {
    for (const Edge& e : config.tracked) result.tracked.push_back(make_edge(e.u, e.v));
    std::sort(result.tracked.begin(), result.tracked.end());
    result.tracked.erase(std::unique(result.tracked.begin(), result.tracked.end()), result.tracked.end());
  }

  if (result.tracked.empty()) {
    throw ConfigError("no pairs to track: raise the tracked fraction");
  }

  const auto histories = record_histories(initial, config, result.tracked, result.tally);
  result.per_edge.resize(histories.size());
  parallel_for(histories.size(), config.workers,
               [&](std::size_t i) { result.per_edge[i] = find_thinning_factor(histories[i]); });
  result.k_star = global_thinning(result.per_edge);

  const std::uint64_t available = config.steps / result.k_star;
  result.sample_count = std::min<std::uint64_t>(available, config.max_samples);
  if (sink && result.sample_count > 0) {
    Chain chain(initial, config.seed);
    for (std::uint64_t s = 1; s <= result.sample_count; ++s) {
      while (chain.steps() < s * result.k_star) chain.step();
      sink(static_cast<std::size_t>(s - 1), chain.steps(), chain.graph());
    }
  }
  return result;
}

}  // namespace jddgen::long_run
