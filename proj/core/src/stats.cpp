#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jddgen/metrics.hpp"

namespace jddgen {

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS distance needs two nonempty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());

  // Walk the merged support; ties are consumed on both sides before the
  // CDFs are compared.
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw std::invalid_argument("summary of an empty sample");
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  Summary s;
  s.count = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.count - 1);
  }
  for (double q : kSummaryQuantiles) s.quantiles.push_back(quantile(sorted, q));

  const double width = (s.max - s.min) / static_cast<double>(bins);
  s.histogram.counts.assign(bins, 0);
  for (std::size_t b = 0; b <= bins; ++b) {
    s.histogram.edges.push_back(s.min + width * static_cast<double>(b));
  }
  s.histogram.edges.back() = s.max;
  for (double v : sorted) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((v - s.min) / width) : 0;
    ++s.histogram.counts[std::min(b, bins - 1)];
  }
  return s;
}

}  // namespace jddgen
