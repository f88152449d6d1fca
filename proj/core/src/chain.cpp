#include "jddgen/chain.hpp"

#include <utility>

namespace jddgen {

std::string_view to_string(StepTag tag) noexcept {
  switch (tag) {
    case StepTag::Accepted: return "accepted";
    case StepTag::RejectedNotSimple: return "rejected_not_simple";
    case StepTag::RejectedNoDegreeMatch: return "rejected_no_degree_match";
    case StepTag::RejectedDegenerate: return "rejected_degenerate";
  }
  return "unknown";
}

namespace {

bool disjoint(Edge a, Edge b) noexcept {
  return a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v;
}

}  // namespace

std::variant<SwapProposal, StepTag> propose(const Graph& g, Rng& rng) {
  const std::size_t m = g.edge_count();
  if (m < 2) throw ConfigError("swap chain needs at least two edges");

  SwapProposal p;
  p.first_slot = rng.index(m);
  const Edge first = g.edge_at(p.first_slot);
  if (rng.coin()) {
    p.chosen = first.v;
    p.partner = first.u;
  } else {
    p.chosen = first.u;
    p.partner = first.v;
  }

  p.second_slot = rng.index(m);
  const Edge second = g.edge_at(p.second_slot);
  const Degree d = g.degree(p.chosen);
  const bool u_matches = g.degree(second.u) == d;
  const bool v_matches = g.degree(second.v) == d;
  if (!u_matches && !v_matches) return StepTag::RejectedNoDegreeMatch;

  const bool take_v = (u_matches && v_matches) ? rng.coin() : v_matches;
  p.matched = take_v ? second.v : second.u;
  p.matched_partner = take_v ? second.u : second.v;

  if (p.first_slot == p.second_slot || !disjoint(first, second)) {
    return StepTag::RejectedDegenerate;
  }
  return p;
}

std::optional<SwapProposal> make_proposal(const Graph& g, Edge first, VertexId chosen,
                                          Edge second, VertexId matched) {
  first = make_edge(first.u, first.v);
  second = make_edge(second.u, second.v);
  const auto first_slot = g.slot_of(first.u, first.v);
  const auto second_slot = g.slot_of(second.u, second.v);
  if (!first_slot || !second_slot || !disjoint(first, second)) return std::nullopt;
  if (chosen != first.u && chosen != first.v) return std::nullopt;
  if (matched != second.u && matched != second.v) return std::nullopt;
  if (g.degree(chosen) != g.degree(matched)) return std::nullopt;

  SwapProposal p;
  p.first_slot = *first_slot;
  p.second_slot = *second_slot;
  p.chosen = chosen;
  p.partner = chosen == first.u ? first.v : first.u;
  p.matched = matched;
  p.matched_partner = matched == second.u ? second.v : second.u;
  return p;
}

StepOutcome apply(Graph& g, const SwapProposal& p) {
  if (p.first_slot >= g.edge_count() || p.second_slot >= g.edge_count() ||
      g.edge_at(p.first_slot) != p.first_edge() || g.edge_at(p.second_slot) != p.second_edge()) {
    throw std::logic_error("stale swap proposal: edges are not in the stated slots");
  }
  const Edge a = p.first_replacement();
  const Edge b = p.second_replacement();
  if (a.u == a.v || b.u == b.v || a == b || g.has_edge(a.u, a.v) || g.has_edge(b.u, b.v)) {
    return {StepTag::RejectedNotSimple, p};
  }
  g.replace_pair(p.first_slot, a, p.second_slot, b);
  return {StepTag::Accepted, p};
}

Chain::Chain(Graph initial, std::uint64_t seed) : graph_(std::move(initial)), rng_(seed) {}

StepOutcome Chain::step() {
  auto proposal = propose(graph_, rng_);
  ++steps_;
  StepOutcome outcome;
  if (auto* tag = std::get_if<StepTag>(&proposal)) {
    outcome.tag = *tag;
  } else {
    outcome = apply(graph_, std::get<SwapProposal>(proposal));
  }
  tally_.add(outcome.tag);
  return outcome;
}

RunResult run(Graph initial, const ChainConfig& config) {
  RunResult result;
  const std::size_t tracked = config.track_edges.size();
  result.series.resize(tracked);
  for (std::size_t i = 0; i < tracked; ++i) {
    const Edge pair = make_edge(config.track_edges[i].u, config.track_edges[i].v);
    result.series[i].pair = pair;
    result.series[i].values.reserve(config.step_budget + 1);
    result.series[i].values.push_back(initial.has_edge(pair.u, pair.v) ? 1 : 0);
  }
  if (config.record_outcomes) result.outcomes.reserve(config.step_budget);

  Chain chain(std::move(initial), config.seed);
  for (std::uint64_t t = 0; t < config.step_budget; ++t) {
    const StepOutcome outcome = chain.step();
    if (config.record_outcomes) result.outcomes.push_back(outcome.tag);
    for (auto& s : result.series) {
      std::uint8_t value = s.values.back();
      if (outcome.tag == StepTag::Accepted) value = chain.graph().has_edge(s.pair.u, s.pair.v) ? 1 : 0;
      s.values.push_back(value);
    }
  }
  result.tally = chain.tally();
  result.graph = std::move(chain).release();
  return result;
}

}  // namespace jddgen
