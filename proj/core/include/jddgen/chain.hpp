#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "jddgen/graph.hpp"
#include "jddgen/random.hpp"

namespace jddgen {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class StepTag : std::uint8_t {
  Accepted,
  RejectedNotSimple,
  RejectedNoDegreeMatch,
  RejectedDegenerate,
};

std::string_view to_string(StepTag tag) noexcept;

/// A swap of the edge in `first_slot` = (chosen, partner) with the edge in
/// `second_slot` = (matched, matched_partner), where deg(matched) equals
/// deg(chosen). Applying it creates (chosen, matched_partner) and
/// (matched, partner).
struct SwapProposal {
  std::size_t first_slot = 0;
  std::size_t second_slot = 0;
  VertexId chosen = 0;
  VertexId partner = 0;
  VertexId matched = 0;
  VertexId matched_partner = 0;

  Edge first_edge() const noexcept { return make_edge(chosen, partner); }
  Edge second_edge() const noexcept { return make_edge(matched, matched_partner); }
  Edge first_replacement() const noexcept { return make_edge(chosen, matched_partner); }
  Edge second_replacement() const noexcept { return make_edge(matched, partner); }

  friend bool operator==(const SwapProposal&, const SwapProposal&) = default;
};

struct StepOutcome {
  StepTag tag = StepTag::RejectedDegenerate;
  std::optional<SwapProposal> proposal;
};

/// Draws a proposal: the first edge and one of its endpoints uniformly, then
/// the second edge uniformly over all m edges. A second edge with no endpoint
/// of the chosen degree is RejectedNoDegreeMatch; if both endpoints match one
/// is picked by a fair coin. Edges that coincide or share a vertex are
/// RejectedDegenerate. Throws ConfigError when m < 2.
std::variant<SwapProposal, StepTag> propose(const Graph& g, Rng& rng);

/// Builds the proposal that swaps `first` at endpoint `chosen` with `second`
/// at endpoint `matched`, if both edges exist, are disjoint and the degrees
/// match.
std::optional<SwapProposal> make_proposal(const Graph& g, Edge first, VertexId chosen,
                                          Edge second, VertexId matched);

/// Accepts the swap if both replacement edges are new and loop-free, else
/// returns RejectedNotSimple and leaves `g` untouched. Throws std::logic_error
/// if the proposal does not describe the current graph.
StepOutcome apply(Graph& g, const SwapProposal& proposal);

struct OutcomeTally {
  std::array<std::uint64_t, 4> counts{};

  void add(StepTag tag) noexcept { ++counts[static_cast<std::size_t>(tag)]; }
  std::uint64_t operator[](StepTag tag) const noexcept {
    return counts[static_cast<std::size_t>(tag)];
  }
  std::uint64_t total() const noexcept { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

/// One chain: a graph, its generator and the number of steps taken. Every
/// step advances the counter, accepted or not.
class Chain {
 public:
  Chain(Graph initial, std::uint64_t seed);

  StepOutcome step();

  const Graph& graph() const noexcept { return graph_; }
  Graph release() && { return std::move(graph_); }
  std::uint64_t steps() const noexcept { return steps_; }
  const OutcomeTally& tally() const noexcept { return tally_; }

 private:
  Graph graph_;
  Rng rng_;
  std::uint64_t steps_ = 0;
  OutcomeTally tally_;
};

struct ChainConfig {
  std::uint64_t seed = 0;
  std::uint64_t step_budget = 0;
  std::vector<Edge> track_edges;
  /// Keep the per-step tag sequence, one byte per step.
  bool record_outcomes = false;
};

/// Occurrence series Z_0..Z_T of one vertex pair: 1 where it is an edge.
struct EdgeSeries {
  Edge pair;
  std::vector<std::uint8_t> values;
};

struct RunResult {
  Graph graph;
  OutcomeTally tally;
  std::vector<StepTag> outcomes;
  /// Same order as ChainConfig::track_edges; length step_budget + 1 with the
  /// initial state first.
  std::vector<EdgeSeries> series;
};

RunResult run(Graph initial, const ChainConfig& config);

}  // namespace jddgen
