#include "jddgen/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jddgen {

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges)
    : adjacency_(vertex_count) {
  edges_.reserve(edges.size());
  slots_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
    if (!add_edge(e.u, e.v)) throw std::invalid_argument("duplicate edge in edge list");
  }
}

Degree Graph::max_degree() const noexcept {
  Degree best = 0;
  for (const auto& nbrs : adjacency_) best = std::max<Degree>(best, static_cast<Degree>(nbrs.size()));
  return best;
}

bool Graph::has_edge(VertexId a, VertexId b) const {
  return slots_.contains(edge_key(make_edge(a, b)));
}

std::optional<std::size_t> Graph::slot_of(VertexId a, VertexId b) const {
  auto it = slots_.find(edge_key(make_edge(a, b)));
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

bool Graph::add_edge(VertexId a, VertexId b) {
  if (a == b) return false;
  const Edge e = make_edge(a, b);
  if (slots_.contains(edge_key(e))) return false;
  edges_.push_back(e);
  link(e, edges_.size() - 1);
  return true;
}

void Graph::replace_pair(std::size_t first_slot, Edge first_replacement,
                         std::size_t second_slot, Edge second_replacement) {
  unlink(edges_[first_slot]);
  unlink(edges_[second_slot]);
  edges_[first_slot] = first_replacement;
  edges_[second_slot] = second_replacement;
  link(first_replacement, first_slot);
  link(second_replacement, second_slot);
}

void Graph::unlink(Edge e) {
  slots_.erase(edge_key(e));
  auto drop = [](std::vector<VertexId>& nbrs, VertexId x) {
    auto it = std::find(nbrs.begin(), nbrs.end(), x);
    *it = nbrs.back();
    nbrs.pop_back();
  };
  drop(adjacency_[e.u], e.v);
  drop(adjacency_[e.v], e.u);
}

void Graph::link(Edge e, std::size_t slot) {
  slots_.emplace(edge_key(e), slot);
  adjacency_[e.u].push_back(e.v);
  adjacency_[e.v].push_back(e.u);
}

std::vector<Edge> Graph::sorted_edges() const {
  std::vector<Edge> out(edges_.begin(), edges_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool same_structure(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.sorted_edges() == b.sorted_edges();
}

std::uint64_t JointDegreeMatrix::at(Degree i, Degree j) const {
  if (i > j) std::swap(i, j);
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

void JointDegreeMatrix::add(Degree i, Degree j, std::uint64_t count) {
  if (i > j) std::swap(i, j);
  entries_[{i, j}] += count;
}

std::uint64_t JointDegreeMatrix::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : entries_) sum += count;
  return sum;
}

DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram f;
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++f[g.degree(v)];
  return f;
}

JointDegreeMatrix joint_degree_matrix(const Graph& g) {
  JointDegreeMatrix jdd;
  for (const Edge& e : g.edges()) jdd.add(g.degree(e.u), g.degree(e.v));
  return jdd;
}

namespace {

template <typename... Parts>
std::string concat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

void check_structure(const Graph& g, std::vector<std::string>& out) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexId>> sorted(n);
  std::uint64_t half_degree_sum = 0;
  for (VertexId u = 0; u < n; ++u) {
    auto nbrs = g.neighbors(u);
    sorted[u].assign(nbrs.begin(), nbrs.end());
    std::sort(sorted[u].begin(), sorted[u].end());
    half_degree_sum += sorted[u].size();
  }

  std::size_t loops = 0, parallels = 0, asymmetric = 0, out_of_range = 0;
  for (VertexId u = 0; u < n; ++u) {
    const auto& nbrs = sorted[u];
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const VertexId v = nbrs[k];
      if (v >= n) {
        ++out_of_range;
        continue;
      }
      if (v == u) ++loops;
      if (k > 0 && nbrs[k - 1] == v) ++parallels;
      if (!std::binary_search(sorted[v].begin(), sorted[v].end(), u)) ++asymmetric;
    }
  }
  if (out_of_range) out.push_back(concat("neighbor id out of range: ", out_of_range, " entries"));
  if (loops) out.push_back(concat("simplicity: ", loops, " self-loop entries"));
  if (parallels) out.push_back(concat("simplicity: ", parallels, " parallel-edge entries"));
  if (asymmetric) out.push_back(concat("symmetry: ", asymmetric, " one-sided adjacency entries"));

  if (half_degree_sum % 2 != 0 || half_degree_sum / 2 != g.edge_count()) {
    out.push_back(concat("edge count: m = ", g.edge_count(), " but sum of adjacency sizes = ",
                         half_degree_sum));
  }

  std::size_t unindexed = 0;
  for (std::size_t slot = 0; slot < g.edge_count(); ++slot) {
    const Edge e = g.edge_at(slot);
    const bool adjacent = e.u < n && e.v < n &&
                          std::binary_search(sorted[e.u].begin(), sorted[e.u].end(), e.v);
    if (e.u >= e.v || !adjacent || g.slot_of(e.u, e.v) != slot) ++unindexed;
  }
  if (unindexed) out.push_back(concat("edge array: ", unindexed, " slots disagree with adjacency"));
}

void check_invariants(const Graph& g, const DegreeHistogram& f, const JointDegreeMatrix& jdd,
                      std::vector<std::string>& out) {
  const std::uint64_t n = g.vertex_count();
  const std::uint64_t m = g.edge_count();

  std::uint64_t vertices = 0, stubs = 0;
  for (const auto& [d, count] : f) {
    vertices += count;
    stubs += static_cast<std::uint64_t>(d) * count;
  }
  if (vertices != n) out.push_back(concat("vertex-sum identity: sum f(d) = ", vertices, ", n = ", n));
  if (stubs != 2 * m) out.push_back(concat("stub-sum identity: sum d*f(d) = ", stubs, ", 2m = ", 2 * m));
  if (jdd.total() != m) {
    out.push_back(concat("edge-sum identity: sum J = ", jdd.total(), ", m = ", m));
  }

  // For each degree d: sum_{j != d} J(d, j) + 2 J(d, d) = d f(d).
  std::map<Degree, std::uint64_t> endpoint_mass;
  for (const auto& [key, count] : jdd.entries()) {
    endpoint_mass[key.first] += count;
    endpoint_mass[key.second] += count;
  }
  std::set<Degree> degrees;
  for (const auto& [d, count] : f) degrees.insert(d);
  for (const auto& [d, mass] : endpoint_mass) degrees.insert(d);
  for (Degree d : degrees) {
    auto fit = f.find(d);
    const std::uint64_t expected = fit == f.end() ? 0 : static_cast<std::uint64_t>(d) * fit->second;
    auto mit = endpoint_mass.find(d);
    const std::uint64_t mass = mit == endpoint_mass.end() ? 0 : mit->second;
    if (mass != expected) {
      out.push_back(concat("handshake identity at degree ", d, ": endpoint mass ", mass,
                           ", d*f(d) = ", expected));
    }
  }

  if (degree_histogram(g) != f) out.push_back("degree histogram differs from the graph's");
  if (joint_degree_matrix(g) != jdd) out.push_back("joint degree matrix differs from the graph's");
}

}  // namespace

ValidationReport validate(const Graph& g, const DegreeHistogram& f, const JointDegreeMatrix& jdd) {
  ValidationReport report;
  check_structure(g, report.violations);
  check_invariants(g, f, jdd, report.violations);
  return report;
}

}  // namespace jddgen
