#include <doctest.h>

#include <map>
#include <sstream>

#include "jddgen/chain.hpp"
#include "jddgen/edge_list.hpp"
#include "jddgen/graph.hpp"
#include "support/graphs.hpp"

using namespace jddgen;
using jddgen::testing::complete;
using jddgen::testing::from_pairs;
using jddgen::testing::random_graph;
using jddgen::testing::star;

namespace {

LabeledGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("constructor rejects loops, duplicates and out-of-range ids") {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {0, 1}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph(3, loop), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, dup), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, range), std::invalid_argument);
}

TEST_CASE("add_edge and lookups") {
  Graph g(4);
  CHECK(g.add_edge(2, 1));
  CHECK_FALSE(g.add_edge(1, 2));
  CHECK_FALSE(g.add_edge(3, 3));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.slot_of(2, 1) == std::optional<std::size_t>(0));
  CHECK(g.edge_at(0) == Edge{1, 2});
  CHECK(g.degree(1) == 1);
  CHECK(g.max_degree() == 1);
}

TEST_CASE("degree histogram") {
  CHECK(degree_histogram(complete(3)) == DegreeHistogram{{2, 3}});
  CHECK(degree_histogram(star(3)) == DegreeHistogram{{1, 3}, {3, 1}});
}

TEST_CASE("joint degree matrix of small graphs") {
  const JointDegreeMatrix k3 = joint_degree_matrix(complete(3));
  CHECK(k3.entries() == std::map<JointDegreeMatrix::Key, std::uint64_t>{{{2, 2}, 3}});
  const JointDegreeMatrix s3 = joint_degree_matrix(star(3));
  CHECK(s3.entries() == std::map<JointDegreeMatrix::Key, std::uint64_t>{{{1, 3}, 3}});
  CHECK(s3.at(3, 1) == 3);
  CHECK(s3.at(1, 1) == 0);
}

TEST_CASE("joint degree matrix matches a double loop over vertex pairs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = random_graph(20, 0.2, seed);
    std::map<std::pair<Degree, Degree>, std::uint64_t> oracle;
    for (VertexId a = 0; a < 20; ++a) {
      for (VertexId b = a + 1; b < 20; ++b) {
        if (!g.has_edge(a, b)) continue;
        Degree i = g.degree(a), j = g.degree(b);
        if (i > j) std::swap(i, j);
        ++oracle[{i, j}];
      }
    }
    CHECK(joint_degree_matrix(g).entries() == oracle);
  }
}

TEST_CASE("validate") {
  const Graph k3 = complete(3);
  JointDegreeMatrix j;
  j.add(2, 2, 3);
  CHECK(validate(k3, {{2, 3}}, j).ok());

  JointDegreeMatrix wrong;
  wrong.add(2, 2, 2);
  const ValidationReport r = validate(k3, {{2, 3}}, wrong);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "edge-sum identity"));

  const ValidationReport h = validate(k3, {{2, 2}}, j);
  CHECK_FALSE(h.ok());
}

TEST_CASE("validate after many accepted swaps") {
  const Graph g0 = random_graph(60, 0.1, 5);
  const auto f = degree_histogram(g0);
  const auto jdd = joint_degree_matrix(g0);
  Chain chain(g0, 11);
  while (chain.tally()[StepTag::Accepted] < 100000) chain.step();
  CHECK(validate(chain.graph(), f, jdd).ok());
}

TEST_CASE("handshake and sum identities hold on random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(25, 0.15, seed);
    const auto f = degree_histogram(g);
    const auto jdd = joint_degree_matrix(g);
    std::uint64_t vertices = 0, stubs = 0;
    for (auto [d, c] : f) {
      vertices += c;
      stubs += d * c;
    }
    CHECK(vertices == g.vertex_count());
    CHECK(stubs == 2 * g.edge_count());
    CHECK(jdd.total() == g.edge_count());
    for (auto [d, c] : f) {
      std::uint64_t mass = 0;
      for (const auto& [key, count] : jdd.entries()) {
        if (key.first == d && key.second == d) {
          mass += 2 * count;
        } else if (key.first == d || key.second == d) {
          mass += count;
        }
      }
      CHECK(mass == d * c);
    }
  }
}

TEST_CASE("load symmetrizes, drops loops and compacts ids") {
  const LabeledGraph lg = parse("0 1\n1 0\n1 1\n1 2\n");
  CHECK(lg.graph.vertex_count() == 3);
  CHECK(lg.graph.edge_count() == 2);
  CHECK(lg.graph.sorted_edges() == std::vector<Edge>{{0, 1}, {1, 2}});

  const LabeledGraph tri = parse("0 1\n1 2\n2 0\n");
  CHECK(tri.graph.vertex_count() == 3);
  CHECK(tri.graph.edge_count() == 3);

  const LabeledGraph sparse = parse("# ids may be large\r\n\r\n100 7\r\n7 -3\r\n");
  CHECK(sparse.labels == std::vector<std::int64_t>{-3, 7, 100});
  CHECK(sparse.graph.sorted_edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("load reports malformed lines with their number") {
  try {
    parse("0 1\n# fine\n2 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("5\n"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("# only comments\n\n"), ParseError);
}

TEST_CASE("load of a C. elegans sized input") {
  // 297 vertices and 4296 edges: a ring for connectivity plus random chords.
  const Graph g = jddgen::testing::clustered_ring(297, 1, 4296 - 297, 42);
  REQUIRE(g.edge_count() == 4296);
  std::ostringstream text;
  for (const Edge& e : g.edges()) text << e.v << ' ' << e.u << '\n';
  const LabeledGraph lg = parse(text.str());
  CHECK(lg.graph.vertex_count() == 297);
  CHECK(lg.graph.edge_count() == 4296);
  std::uint64_t total = 0;
  for (auto [d, c] : degree_histogram(lg.graph)) total += c;
  CHECK(total == 297);
}

TEST_CASE("serialize then load is idempotent") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledGraph first = parse([&] {
      std::ostringstream os;
      // Random labels with gaps and reversed pairs.
      Rng rng(seed);
      for (int i = 0; i < 200; ++i) {
        os << rng.index(1000) * 3 << ' ' << rng.index(1000) * 3 << '\n';
      }
      return os.str();
    }());
    std::ostringstream once;
    write_edge_list(once, first.graph, first.labels);
    const LabeledGraph second = parse(once.str());
    CHECK(same_structure(first.graph, second.graph));
    CHECK(first.labels == second.labels);
    std::ostringstream twice;
    write_edge_list(twice, second.graph, second.labels);
    CHECK(once.str() == twice.str());
  }
}

TEST_CASE("write emits sorted canonical pairs") {
  const Graph g = from_pairs(4, {{3, 0}, {2, 1}, {1, 0}});
  std::ostringstream os;
  write_edge_list(os, g);
  CHECK(os.str() == "0 1\n0 3\n1 2\n");
}
