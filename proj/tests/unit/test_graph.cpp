#include <gtest/gtest.h>

#include <algorithm>

#include "afembed/graph.hpp"
#include "afembed/graph_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace afembed {
namespace {

using testing::edge_ids;
using testing::make_graph;
using testing::square_graph;

constexpr const char* kSquareText = R"(# the square
vertex u1
vertex u2
vertex u3
vertex u4
edge e1 u1 u2
edge e2 u2 u3
edge e3 u3 u4
edge e4 u4 u1
)";

TEST(ParseGraph, Square) {
  Graph g = parse_graph(kSquareText);
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g, square_graph());
  EXPECT_EQ(g.range(EdgeId("e4")), VertexId("u1"));
}

TEST(ParseGraph, SingleVertexNoEdges) {
  Graph g = parse_graph("vertex only\n");
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ParseGraph, OrderInsensitive) {
  Graph g = parse_graph("edge e a b  # trailing comment\nvertex b\nvertex a\n");
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.source(EdgeId("e")), VertexId("a"));
}

TEST(ParseGraph, UndeclaredEndpoint) {
  try {
    parse_graph("vertex a\nedge e a ghost\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(ParseGraph, DuplicateIds) {
  EXPECT_THROW(parse_graph("vertex a\nvertex a\n"), ParseError);
  EXPECT_THROW(parse_graph("vertex a\nedge e a a\nedge e a a\n"), ParseError);
}

TEST(ParseGraph, SyntaxErrorReportsPosition) {
  try {
    parse_graph("vertex a\nvertex b\nedge e a\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GE(e.column(), 1u);
  }
  EXPECT_THROW(parse_graph("node a\n"), ParseError);
  EXPECT_THROW(parse_graph("vertex a b\n"), ParseError);
}

TEST(ParseGraph, Json) {
  Graph g = parse_graph(R"({"vertices": ["a", "b"], "edges": [{"id": "e", "src": "a", "dst": "b"}]})");
  EXPECT_EQ(g.range(EdgeId("e")), VertexId("b"));
  EXPECT_EQ(parse_graph(serialize_graph_json(square_graph())), square_graph());
  EXPECT_THROW(parse_graph(R"({"vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "b"}]})"),
               ParseError);
  EXPECT_THROW(parse_graph("{not json"), ParseError);
}

TEST(Receivers, Examples) {
  Graph g = square_graph();
  EXPECT_EQ(g.receivers(VertexId("u2")), edge_ids({"e1"}));
  Graph iso = make_graph({"x"}, {});
  EXPECT_TRUE(iso.receivers(VertexId("x")).empty());
  Graph loops = testing::two_self_loops_graph();
  EXPECT_EQ(loops.receivers(VertexId("v")), edge_ids({"a", "b"}));
  EXPECT_THROW(g.receivers(VertexId("nope")), GraphError);
}

TEST(IsPath, Examples) {
  Graph g = square_graph();
  EXPECT_TRUE(is_path(g, edge_ids({"e2", "e1"})));
  EXPECT_FALSE(is_path(g, edge_ids({"e1", "e3"})));
  for (const char* e : {"e1", "e2", "e3", "e4"}) EXPECT_TRUE(is_path(g, edge_ids({e})));
  EXPECT_THROW(is_path(g, edge_ids({"zz"})), GraphError);
}

TEST(PathTest, RangeSourceAndSplit) {
  Graph g = square_graph();
  Path p = Path::from_edges(g, edge_ids({"e3", "e2", "e1"}));
  EXPECT_EQ(p.range(), VertexId("u4"));
  EXPECT_EQ(p.source(), VertexId("u1"));
  for (std::size_t k = 1; k < p.length(); ++k) {
    auto [left, right] = p.split(g, k);
    EXPECT_EQ(left.length() + right.length(), p.length());
    EXPECT_EQ(left.source(), right.range());
  }
  EXPECT_THROW(Path::from_edges(g, edge_ids({"e1", "e2"})), GraphError);
  Path v = Path::vertex(g, VertexId("u3"));
  EXPECT_TRUE(v.is_vertex());
  EXPECT_EQ(v.range(), v.source());
}

TEST(ExportDot, Structure) {
  const std::string dot = export_dot(square_graph());
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 4);
  EXPECT_NE(dot.find("\"u1\" -> \"u2\" [label=\"e1\"]"), std::string::npos);

  const std::string empty = export_dot(Graph{});
  EXPECT_EQ(empty, "digraph \"E\" {\n}\n");

  Graph par = make_graph({"a", "b"}, {{"x", "a", "b"}, {"y", "a", "b"}});
  const std::string p = export_dot(par);
  EXPECT_NE(p.find("[label=\"x\"]"), std::string::npos);
  EXPECT_NE(p.find("[label=\"y\"]"), std::string::npos);
}

TEST(GraphProperties, RoundTripAndReceiverPartition) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testing::random_multigraph(rng, 8, 16);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
    EXPECT_EQ(parse_graph(serialize_graph_json(g)), g);
    std::size_t total = 0;
    for (const VertexId& v : g.vertices()) {
      for (const EdgeId& e : g.receivers(v)) EXPECT_EQ(g.range(e), v);
      total += g.receivers(v).size();
    }
    EXPECT_EQ(total, g.edge_count());
  }
}

TEST(GraphProperties, PathSplitsArePaths) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = testing::random_multigraph(rng, 5, 10);
    if (g.edge_count() == 0) continue;
    // random walk backwards along receivers
    std::vector<EdgeId> edges{g.edges()[rng() % g.edge_count()].id};
    for (int step = 0; step < 5; ++step) {
      auto in = g.receivers(g.source(edges.back()));
      if (in.empty()) break;
      edges.push_back(in[rng() % in.size()]);
    }
    ASSERT_TRUE(is_path(g, edges));
    Path p = Path::from_edges(g, edges);
    for (std::size_t k = 1; k < p.length(); ++k) {
      auto [left, right] = p.split(g, k);
      EXPECT_TRUE(is_path(g, left.edges()));
      EXPECT_TRUE(is_path(g, right.edges()));
    }
  }
}

TEST(Ids, Validation) {
  EXPECT_TRUE(is_valid_id("u1"));
  EXPECT_TRUE(is_valid_id("T0.L3.1"));
  EXPECT_FALSE(is_valid_id(""));
  EXPECT_FALSE(is_valid_id("a b"));
  EXPECT_FALSE(is_valid_id("p(v)"));
  EXPECT_THROW(make_graph({"a b"}, {}), GraphError);
}

}  // namespace
}  // namespace afembed
