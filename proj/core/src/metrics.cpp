#include "jddgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "jddgen/random.hpp"

namespace jddgen {

std::uint64_t triangles(const Graph& g) {
  const std::size_t n = g.vertex_count();
  // Orient each edge toward the higher (degree, id) endpoint; every triangle
  // then has exactly one vertex whose two out-neighbors close it.
  auto before = [&](VertexId a, VertexId b) {
    const Degree da = g.degree(a), db = g.degree(b);
    return da != db ? da < db : a < b;
  };
  std::vector<std::vector<VertexId>> forward(n);
  for (const Edge& e : g.edges()) {
    if (before(e.u, e.v)) {
      forward[e.u].push_back(e.v);
    } else {
      forward[e.v].push_back(e.u);
    }
  }
  for (auto& out : forward) std::sort(out.begin(), out.end());

  std::uint64_t count = 0;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : forward[u]) {
      const auto& a = forward[u];
      const auto& b = forward[v];
      auto ia = a.begin();
      auto ib = b.begin();
      while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
          ++ia;
        } else if (*ib < *ia) {
          ++ib;
        } else {
          ++count;
          ++ia;
          ++ib;
        }
      }
    }
  }
  return count;
}

std::uint64_t wedges(const Graph& g) {
  std::uint64_t total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t d = g.degree(v);
    total += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return total;
}

double global_clustering(const Graph& g) {
  const std::uint64_t w = wedges(g);
  if (w == 0) return 0.0;
  return 3.0 * static_cast<double>(triangles(g)) / static_cast<double>(w);
}

namespace {

constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);

// Fills dist for everything reachable from source and leaves the visit
// order in queue. Returns the eccentricity of source.
std::uint32_t bfs(const Graph& g, VertexId source, std::vector<std::uint32_t>& dist,
                  std::vector<VertexId>& queue) {
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  std::uint32_t far = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    far = dist[u];
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] == kUnvisited) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return far;
}

}  // namespace

std::uint32_t diameter(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("diameter of a graph without edges");
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> dist(n, kUnvisited);
  std::vector<VertexId> queue;
  queue.reserve(n);

  std::vector<VertexId> largest;
  for (VertexId v = 0; v < n; ++v) {
    if (dist[v] != kUnvisited) continue;
    bfs(g, v, dist, queue);
    // Components are discovered in order of their smallest vertex, so a
    // strict comparison keeps the earliest on ties.
    if (queue.size() > largest.size()) largest = queue;
  }

  std::uint32_t best = 0;
  for (VertexId source : largest) {
    for (VertexId v : largest) dist[v] = kUnvisited;
    best = std::max(best, bfs(g, source, dist, queue));
  }
  return best;
}

EigenEstimate laplacian_lambda_max(const Graph& g, double tolerance, std::size_t max_iterations) {
  const std::size_t n = g.vertex_count();
  EigenEstimate out;
  if (n == 0 || g.edge_count() == 0) {
    out.converged = true;
    return out;
  }

  auto apply_laplacian = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (VertexId v = 0; v < n; ++v) {
      double acc = static_cast<double>(g.degree(v)) * x[v];
      for (VertexId w : g.neighbors(v)) acc -= x[w];
      y[v] = acc;
    }
  };
  auto norm = [](const std::vector<double>& x) {
    return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  };

  std::vector<double> x(n), y(n);
  Rng start(0x6c616d626461ULL);
  for (double& xi : x) xi = start.unit() - 0.5;
  double scale = norm(x);
  for (double& xi : x) xi /= scale;

  for (std::size_t it = 1; it <= max_iterations; ++it) {
    apply_laplacian(x, y);
    const double rayleigh = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - rayleigh * x[i];
      residual += r * r;
    }
    out.value = rayleigh;
    out.relative_residual = rayleigh > 0.0 ? std::sqrt(residual) / rayleigh : 0.0;
    out.iterations = it;
    if (out.relative_residual <= tolerance) {
      out.converged = true;
      return out;
    }
    scale = norm(y);
    if (scale == 0.0) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / scale;
  }
  return out;
}

MetricSample compute_metrics(const Graph& g) {
  MetricSample s;
  s.triangles = triangles(g);
  const std::uint64_t w = wedges(g);
  s.clustering = w == 0 ? 0.0 : 3.0 * static_cast<double>(s.triangles) / static_cast<double>(w);
  s.diameter = diameter(g);
  const EigenEstimate lambda = laplacian_lambda_max(g);
  s.lambda_max = lambda.value;
  s.lambda_residual = lambda.relative_residual;
  s.lambda_converged = lambda.converged;
  return s;
}

std::vector<double> metric_column(std::span<const MetricSample> samples, std::size_t metric) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const MetricSample& s : samples) {
    switch (metric) {
      case 0: out.push_back(s.clustering); break;
      case 1: out.push_back(static_cast<double>(s.triangles)); break;
      case 2: out.push_back(static_cast<double>(s.diameter)); break;
      case 3: out.push_back(s.lambda_max); break;
      default: throw std::out_of_range("metric index");
    }
  }
  return out;
}

}  // namespace jddgen
