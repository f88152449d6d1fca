#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jddgen {

using VertexId = std::uint32_t;
using Degree = std::uint32_t;

/// Undirected edge in canonical form (u < v).
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(VertexId a, VertexId b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

constexpr std::uint64_t edge_key(Edge e) noexcept {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges are kept twice: as per-vertex neighbor lists and as an indexable
/// edge array. The array gives O(1) uniform edge draws for the swap chain and
/// the key index gives O(1) membership tests. Degrees are the neighbor list
/// sizes; an accepted swap never changes them.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);

  /// Throws std::invalid_argument on a self-loop, a duplicate edge or an
  /// endpoint outside 0..vertex_count-1.
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  Degree degree(VertexId v) const noexcept {
    return static_cast<Degree>(adjacency_[v].size());
  }
  Degree max_degree() const noexcept;

  /// Neighbors of `v` in unspecified order.
  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return adjacency_[v];
  }

  /// Canonical edges in slot order. Slot order changes as swaps are accepted.
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge_at(std::size_t slot) const noexcept { return edges_[slot]; }

  bool has_edge(VertexId a, VertexId b) const;
  std::optional<std::size_t> slot_of(VertexId a, VertexId b) const;

  /// Returns false (and leaves the graph unchanged) for loops and duplicates.
  bool add_edge(VertexId a, VertexId b);

  /// Replaces the edges in `first_slot` and `second_slot` with the given
  /// replacements in one step. The caller guarantees the result is simple.
  void replace_pair(std::size_t first_slot, Edge first_replacement,
                    std::size_t second_slot, Edge second_replacement);

  std::vector<Edge> sorted_edges() const;

  /// Same vertex count and edge set, independent of slot order.
  friend bool same_structure(const Graph& a, const Graph& b);

 private:
  void unlink(Edge e);
  void link(Edge e, std::size_t slot);

  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> slots_;
};

/// f(d): number of vertices of degree d.
using DegreeHistogram = std::map<Degree, std::uint64_t>;

/// J(i, j): number of edges joining a degree-i and a degree-j vertex, keyed
/// by the unordered degree pair with i <= j. Absent entries are zero.
class JointDegreeMatrix {
 public:
  using Key = std::pair<Degree, Degree>;

  std::uint64_t at(Degree i, Degree j) const;
  void add(Degree i, Degree j, std::uint64_t count = 1);

  const std::map<Key, std::uint64_t>& entries() const noexcept { return entries_; }
  std::uint64_t total() const noexcept;

  friend bool operator==(const JointDegreeMatrix&, const JointDegreeMatrix&) = default;

 private:
  std::map<Key, std::uint64_t> entries_;
};

DegreeHistogram degree_histogram(const Graph& g);
JointDegreeMatrix joint_degree_matrix(const Graph& g);

/// Every violated identity, in check order. Empty means the graph is simple
/// and symmetric, and the supplied histogram and matrix describe it exactly.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const Graph& g, const DegreeHistogram& f,
                          const JointDegreeMatrix& jdd);

}  // namespace jddgen
