#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jddgen/graph.hpp"

namespace jddgen {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A graph plus the original vertex labels: labels[v] is the id that dense
/// vertex v had in the input. Labels are strictly increasing.
struct LabeledGraph {
  Graph graph;
  std::vector<std::int64_t> labels;
};

/// Reads whitespace-separated integer pairs, one per line. '#' lines and blank
/// lines are skipped, CRLF is accepted. Edges are symmetrized, duplicates
/// collapse, self-loops are dropped, and the ids that occur in retained edges
/// are compacted to 0..n-1 in increasing label order.
LabeledGraph load_edge_list(std::istream& in);
LabeledGraph load_edge_list(const std::filesystem::path& path);

/// One edge per line as "u v" with u < v, sorted. With `labels` the original
/// ids are written instead of dense ids.
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::int64_t> labels = {});
void write_edge_list(std::ostream& out, std::span<const Edge> sorted_edges,
                     std::span<const std::int64_t> labels = {});

}  // namespace jddgen
