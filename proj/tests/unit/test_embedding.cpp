#include <gtest/gtest.h>

#include "afembed/embedding.hpp"
#include "afembed/graph_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace afembed {
namespace {

using testing::edge_ids;

TEST(MultiplicitySeqTest, ParseAndCounts) {
  EXPECT_EQ(MultiplicitySeq().path_counts(3), (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_EQ(MultiplicitySeq::parse("3;2").path_counts(3),
            (std::vector<std::uint64_t>{1, 3, 6, 12}));
  EXPECT_EQ(MultiplicitySeq::parse("3,1;2").at(2), 1);
  EXPECT_EQ(MultiplicitySeq::parse("5").at(9), 5);
  EXPECT_EQ(MultiplicitySeq::parse(";2"), MultiplicitySeq());
  EXPECT_THROW(MultiplicitySeq({}, 1), PreconditionError);
  EXPECT_THROW(MultiplicitySeq({0}, 2), PreconditionError);
  EXPECT_THROW(MultiplicitySeq::parse("1"), PreconditionError);
  EXPECT_THROW(MultiplicitySeq::parse("x;2"), ParseError);
  EXPECT_EQ(MultiplicitySeq::parse(MultiplicitySeq({3, 1}, 4).to_string()),
            MultiplicitySeq({3, 1}, 4));
}

TEST(Embed, SquareGraph) {
  Graph g = testing::square_graph();
  Embedding emb = embed(g);
  ASSERT_EQ(emb.spec.replacements.size(), 1u);
  const LoopReplacement& r = emb.spec.replacements[0];
  EXPECT_EQ(r.loop.edges(), edge_ids({"e4", "e3", "e2", "e1"}));
  EXPECT_EQ(r.f_edges.size(), 4u);
  for (std::size_t i = 1; i <= 4; ++i) {
    EXPECT_EQ(r.f_edges[i - 1].source, r.tail.sink());
    EXPECT_EQ(r.f_edges[i - 1].range, r.loop.vertex(i));
  }
  EXPECT_EQ(emb.spec.base.vertex_count(), 4u);
  EXPECT_EQ(emb.spec.base.edge_count(), 0u);
  EXPECT_EQ(emb.map.edges.at(EdgeId("e1")).to_string(),
            "s(" + r.tail.ns + ".f2) t(" + r.tail.ns + ") s*(" + r.tail.ns + ".f1)");
  EXPECT_EQ(emb.map.edges.at(EdgeId("e4")).to_string(),
            "s(" + r.tail.ns + ".f1) t(" + r.tail.ns + ") s*(" + r.tail.ns + ".f4)");
  EXPECT_EQ(emb.map.vertices.at(VertexId("u3")).to_string(), "p(u3)");
  EXPECT_EQ(original_graph(emb.spec), g);
}

TEST(Embed, MaterializedSquareStructure) {
  Embedding emb = embed(testing::square_graph());
  Graph f = materialize(emb.spec, 3);
  const auto& t = emb.spec.replacements[0].tail;
  // u1..u4, v, three tail levels
  EXPECT_EQ(f.vertex_count(), 4u + 1u + 3u);
  // f1..f4 plus 2 edges per level
  EXPECT_EQ(f.edge_count(), 4u + 6u);
  EXPECT_EQ(f.receivers(t.level_vertex(1)).size(), 2u);
  EXPECT_EQ(f.emitters(t.sink()).size(), 4u);
}

TEST(Embed, AcyclicIsIdentity) {
  Graph g = testing::acyclic_graph();
  Embedding emb = embed(g);
  EXPECT_TRUE(emb.spec.replacements.empty());
  EXPECT_EQ(emb.spec.base, g);
  for (const Edge& e : g.edges()) EXPECT_EQ(emb.map.edges.at(e.id).to_string(), "s(" + e.id.str() + ")");
  EXPECT_EQ(materialize(emb.spec, 5), g);
}

TEST(Embed, SelfLoop) {
  Embedding emb = embed(testing::self_loop_graph());
  ASSERT_EQ(emb.spec.replacements.size(), 1u);
  const std::string ns = emb.spec.replacements[0].tail.ns;
  EXPECT_EQ(emb.map.edges.at(EdgeId("e")).to_string(),
            "s(" + ns + ".f1) t(" + ns + ") s*(" + ns + ".f1)");
}

TEST(Embed, EntranceRefusedWithWitness) {
  try {
    embed(testing::square_entrance_graph());
    FAIL() << "expected EntranceError";
  } catch (const EntranceError& e) {
    EXPECT_EQ(e.witness().entry_vertex, VertexId("u2"));
    EXPECT_EQ(e.witness().entry_edge, EdgeId("x"));
  }
}

TEST(Embed, NamespaceAvoidsCollisions) {
  Graph g = testing::make_graph({"T1.v", "u"}, {{"e", "u", "u"}, {"T1", "u", "T1.v"}});
  Embedding emb = embed(g);
  const std::string ns = emb.spec.replacements[0].tail.ns;
  EXPECT_NE(ns, "T1");
  Graph f = materialize(emb.spec, 2);
  EXPECT_EQ(f.vertex_count(), g.vertex_count() + 3u);
}

TEST(Materialize, DepthZero) {
  Embedding emb = embed(testing::square_graph());
  Graph f = materialize(emb.spec, 0);
  EXPECT_EQ(f.vertex_count(), 5u);
  EXPECT_EQ(f.edge_count(), 4u);
}

TEST(Materialize, PathCountsMatchCornerDimension) {
  Embedding emb = embed(testing::square_graph());
  Graph f = materialize(emb.spec, 3);
  const VertexId v = emb.spec.replacements[0].tail.sink();
  EXPECT_EQ(testing::oracle_path_counts(f, v, 3), (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_EQ(corner_dimension(emb.spec, 0, 3), (std::vector<std::uint64_t>{1, 2, 4, 8}));

  Embedding mixed = embed(testing::square_graph(), MultiplicitySeq({3}, 2));
  Graph fm = materialize(mixed.spec, 3);
  EXPECT_EQ(corner_dimension(mixed.spec, 0, 3), (std::vector<std::uint64_t>{1, 3, 6, 12}));
  EXPECT_EQ(testing::oracle_path_counts(fm, mixed.spec.replacements[0].tail.sink(), 3),
            corner_dimension(mixed.spec, 0, 3));
  EXPECT_THROW(corner_dimension(emb.spec, 1, 3), PreconditionError);
}

TEST(EmbeddingProperties, AcyclicUniqueReceiversAndCounts) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = testing::random_entrance_free_graph(rng, 3);
    Embedding emb = embed(g, MultiplicitySeq({static_cast<int>(1 + rng() % 3)}, 2));
    // domain covers E exactly; unreplaced edges map to themselves
    EXPECT_EQ(emb.map.vertices.size(), g.vertex_count());
    EXPECT_EQ(emb.map.edges.size(), g.edge_count());
    for (const Edge& e : emb.spec.base.edges())
      EXPECT_EQ(emb.map.edges.at(e.id).to_string(), "s(" + e.id.str() + ")");
    for (std::size_t d = 0; d <= 8; ++d) {
      Graph f = materialize(emb.spec, d);
      EXPECT_TRUE(cycle_vertices(f).empty());
      for (std::size_t j = 0; j < emb.spec.replacements.size(); ++j) {
        const LoopReplacement& r = emb.spec.replacements[j];
        for (std::size_t i = 1; i <= r.loop.length(); ++i)
          EXPECT_EQ(f.receivers(r.loop.vertex(i)), std::vector<EdgeId>{r.f_edges[i - 1].id});
        EXPECT_EQ(testing::oracle_path_counts(f, r.tail.sink(), d), corner_dimension(emb.spec, j, d));
      }
    }
  }
}

TEST(Serialization, SpecRoundTrip) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = testing::random_entrance_free_graph(rng, 3);
    Embedding emb = embed(g, MultiplicitySeq({3, 1}, 2));
    AugmentedGraphSpec back = spec_from_json(spec_to_json(emb.spec));
    EXPECT_EQ(spec_to_json(back), spec_to_json(emb.spec));
    EXPECT_EQ(materialize(back, 4), materialize(emb.spec, 4));
  }
  EXPECT_THROW(spec_from_json("{}"), Error);
}

TEST(Serialization, MapTableRoundTrip) {
  Embedding emb = embed(testing::square_graph());
  const CKContext ctx = make_context(emb.spec, 0);
  const std::string table = map_to_table(emb.map);
  GeneratorMap back = map_from_table(table, emb.map.domain, ctx);
  EXPECT_EQ(back.edges, emb.map.edges);
  EXPECT_EQ(back.vertices, emb.map.vertices);
  EXPECT_THROW(map_from_table("edge e1 = s(e1)\n", emb.map.domain, ctx), Error);
  EXPECT_THROW(map_from_table("edge e1 s(e1)\n", emb.map.domain, ctx), ParseError);
}

}  // namespace
}  // namespace afembed
