#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "jddgen/graph.hpp"

namespace jddgen {

/// Unordered vertex triples that are pairwise adjacent.
std::uint64_t triangles(const Graph& g);

/// Sum over vertices of C(deg, 2): paths of length two.
std::uint64_t wedges(const Graph& g);

/// Transitivity 3 * triangles / wedges, 0 for a wedge-free graph.
double global_clustering(const Graph& g);

/// Largest eccentricity inside the largest connected component (most
/// vertices, ties to the component holding the smallest vertex id).
/// Throws std::invalid_argument for a graph without edges.
std::uint32_t diameter(const Graph& g);

struct EigenEstimate {
  double value = 0.0;
  /// ||L x - value x|| / value for the final unit iterate.
  double relative_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of the Laplacian D - A by power iteration. L is
/// positive semidefinite, so its top eigenvalue already dominates in
/// magnitude. Stops once the relative residual is below `tolerance` or after
/// `max_iterations`. The start vector is fixed, so results are reproducible.
EigenEstimate laplacian_lambda_max(const Graph& g, double tolerance = 1e-8,
                                   std::size_t max_iterations = 10000);

struct MetricSample {
  double clustering = 0.0;
  std::uint64_t triangles = 0;
  std::uint32_t diameter = 0;
  double lambda_max = 0.0;
  double lambda_residual = 0.0;
  bool lambda_converged = false;
};

MetricSample compute_metrics(const Graph& g);

/// Metric columns shared by CSV output and comparisons.
inline constexpr const char* kMetricNames[] = {"clustering", "triangles", "diameter", "lambda_max"};
std::vector<double> metric_column(std::span<const MetricSample> samples, std::size_t metric);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Throws
/// std::invalid_argument when either sample is empty.
double ks_distance(std::span<const double> a, std::span<const double> b);

struct Histogram {
  std::vector<double> edges;  // bins + 1 boundaries
  std::vector<std::uint64_t> counts;
};

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 for a single value
  double min = 0.0;
  double max = 0.0;
  /// Linearly interpolated quantiles at kSummaryQuantiles.
  std::vector<double> quantiles;
  Histogram histogram;
};

inline constexpr double kSummaryQuantiles[] = {0.05, 0.25, 0.5, 0.75, 0.95};

/// Throws std::invalid_argument for empty input or zero bins.
Summary summarize(std::span<const double> values, std::size_t bins);

double quantile(std::span<const double> sorted, double q);

}  // namespace jddgen
