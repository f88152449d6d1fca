#include "jddgen/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace jddgen {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

constexpr std::string_view kSpace = " \t\r\f\v";

std::string_view next_token(std::string_view& rest) {
  const auto start = rest.find_first_not_of(kSpace);
  if (start == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(start);
  const auto end = std::min(rest.find_first_of(kSpace), rest.size());
  std::string_view token = rest.substr(0, end);
  rest.remove_prefix(end);
  return token;
}

std::int64_t parse_id(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer vertex id, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

LabeledGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string buffer;
  std::size_t line = 0;
  bool saw_data = false;
  while (std::getline(in, buffer)) {
    ++line;
    std::string_view rest = buffer;
    std::string_view first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    std::string_view second = next_token(rest);
    if (second.empty()) throw ParseError(line, "expected two vertex ids");
    if (!next_token(rest).empty()) throw ParseError(line, "trailing tokens after vertex pair");
    saw_data = true;
    const std::int64_t a = parse_id(first, line);
    const std::int64_t b = parse_id(second, line);
    if (a == b) continue;
    raw.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (!saw_data) throw ParseError(line, "edge list is empty");

  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  LabeledGraph out;
  out.labels.reserve(raw.size());
  for (const auto& [a, b] : raw) {
    out.labels.push_back(a);
    out.labels.push_back(b);
  }
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());

  auto dense = [&](std::int64_t label) {
    return static_cast<VertexId>(
        std::lower_bound(out.labels.begin(), out.labels.end(), label) - out.labels.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) edges.push_back(make_edge(dense(a), dense(b)));
  out.graph = Graph(out.labels.size(), edges);
  return out;
}

LabeledGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, std::span<const Edge> sorted_edges,
                     std::span<const std::int64_t> labels) {
  // Labels are increasing in dense id, so canonical order carries over.
  for (const Edge& e : sorted_edges) {
    if (labels.empty()) {
      out << e.u << ' ' << e.v << '\n';
    } else {
      out << labels[e.u] << ' ' << labels[e.v] << '\n';
    }
  }
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::int64_t> labels) {
  const auto edges = g.sorted_edges();
  write_edge_list(out, edges, labels);
}

}  // namespace jddgen
