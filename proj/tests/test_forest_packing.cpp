#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dynmincut;

namespace {

using Levels = std::vector<std::uint32_t>;

const EdgeKey e01 = EdgeKey::of(0, 1);
const EdgeKey e02 = EdgeKey::of(0, 2);
const EdgeKey e12 = EdgeKey::of(1, 2);

ForestPacking packed_triangle() {
  ForestPacking p(3, 2);
  p.increment(e01);
  p.increment(e12);
  p.increment(e02);
  return p;
}

// Random unit ops on a weighted graph over n vertices; checks invariants and
// mutation bounds after every op.
void stress(std::size_t n, std::size_t k, std::size_t ops, std::uint64_t seed) {
  ForestPacking p(n, k, seed);
  SplitMix64 rng(derive_seed(seed, 5));
  WeightedGraph shadow;
  for (std::size_t op = 0; op < ops; ++op) {
    const auto u = static_cast<VertexId>(uniform_below(rng, n));
    auto v = static_cast<VertexId>(uniform_below(rng, n - 1));
    if (v >= u) ++v;
    const auto e = EdgeKey::of(u, v);
    if (shadow.weight(e) > 0 && uniform_below(rng, 100) < 45) {
      p.decrement(e);
      shadow.add_weight(e, -1);
      ASSERT_LE(p.last_mutations(), 2 * k);
    } else {
      p.increment(e);
      shadow.add_weight(e, 1);
      ASSERT_LE(p.last_mutations(), 1u);
    }
    ASSERT_EQ(p.weight(e), shadow.weight(e));
    const std::string bad = oracle::packing_violation(p);
    ASSERT_TRUE(bad.empty()) << "seed " << seed << " op " << op << ": " << bad;
  }
  EXPECT_LE(p.max_chain(), k);
}

}  // namespace

TEST(ForestPacking, FirstEdgeJoinsFirstForest) {
  ForestPacking p(2, 2);
  p.increment(e01);
  EXPECT_EQ(p.usage(e01), (Levels{1}));
}

TEST(ForestPacking, IncrementOnPackedTriangle) {
  auto p = packed_triangle();
  ASSERT_EQ(p.forest(1), (std::vector<EdgeKey>{e01, e12}));
  ASSERT_EQ(p.forest(2), (std::vector<EdgeKey>{e02}));
  p.increment(e01);
  // T_2 held only (0,2), so 0 and 1 were apart there and the new copy enters.
  EXPECT_EQ(p.usage(e01), (Levels{1, 2}));
  EXPECT_TRUE(oracle::packing_violation(p).empty());
  p.increment(e01);
  EXPECT_EQ(p.usage(e01), (Levels{1, 2}));
  EXPECT_EQ(p.weight(e01), 3);
  EXPECT_TRUE(oracle::packing_violation(p).empty());
}

TEST(ForestPacking, SingleForestKeepsOneCopy) {
  ForestPacking p(2, 1);
  for (int i = 0; i < 3; ++i) p.increment(e01);
  EXPECT_EQ(p.usage(e01), (Levels{1}));
  EXPECT_EQ(p.weight(e01), 3);
}

TEST(ForestPacking, DecrementLastCopyEmptiesPacking) {
  ForestPacking p(2, 2);
  p.increment(e01);
  p.decrement(e01);
  EXPECT_TRUE(p.keys().empty());
  EXPECT_TRUE(p.forest(1).empty());
  EXPECT_EQ(p.union_graph().edge_count(), 0u);
  EXPECT_THROW(p.decrement(e01), WeightUnderflowError);
}

TEST(ForestPacking, TreeDecrementPullsReplacementUp) {
  auto p = packed_triangle();
  p.decrement(e01);
  EXPECT_EQ(p.usage(e02), (Levels{1}));
  EXPECT_EQ(p.forest(1), (std::vector<EdgeKey>{e02, e12}));
  EXPECT_TRUE(p.forest(2).empty());
  EXPECT_TRUE(oracle::packing_violation(p).empty());
}

TEST(ForestPacking, UnusedCopyDecrementIsFree) {
  ForestPacking p(2, 1);
  for (int i = 0; i < 3; ++i) p.increment(e01);
  p.decrement(e01);
  EXPECT_EQ(p.weight(e01), 2);
  EXPECT_EQ(p.usage(e01), (Levels{1}));
  EXPECT_EQ(p.last_mutations(), 0u);
}

TEST(ForestPacking, ApplyDelta) {
  ForestPacking p(2, 2);
  p.apply_delta(e01, 0);
  EXPECT_TRUE(p.keys().empty());
  EXPECT_EQ(p.last_mutations(), 0u);
  p.apply_delta(e01, 10);
  EXPECT_EQ(p.usage(e01), (Levels{1, 2}));
  p.apply_delta(e01, -5);
  EXPECT_EQ(p.weight(e01), 5);
  EXPECT_EQ(p.usage(e01), (Levels{1, 2}));
  EXPECT_EQ(p.last_mutations(), 0u);
  EXPECT_THROW(p.apply_delta(e01, -6), WeightUnderflowError);
  EXPECT_EQ(p.weight(e01), 5);
}

TEST(ForestPacking, UnionGraphExamples) {
  ForestPacking empty(4, 2);
  EXPECT_EQ(empty.union_graph().edge_count(), 0u);
  EXPECT_EQ(empty.union_graph().vertex_count(), 4u);

  const auto tri = packed_triangle();
  const auto h = tri.union_graph();
  EXPECT_EQ(h.weight(e01), 1);
  EXPECT_EQ(h.weight(e02), 1);
  EXPECT_EQ(h.weight(e12), 1);

  // One copy per forest: a weight-5 key between otherwise isolated endpoints
  // lands in all three forests.
  ForestPacking heavy(4, 3);
  heavy.apply_delta(e01, 5);
  EXPECT_EQ(heavy.union_graph().weight(e01), 3);
}

TEST(ForestPacking, RestrictedVertexSet) {
  ForestPacking p(10, 2, std::vector<VertexId>{2, 5, 7});
  p.increment(EdgeKey::of(2, 5));
  p.increment(EdgeKey::of(5, 7));
  p.increment(EdgeKey::of(2, 7));
  const auto h = p.union_graph();
  EXPECT_EQ(h.vertex_count(), 3u);
  EXPECT_EQ(h.total_weight(), 3);
}

TEST(ForestPacking, RandomWeightedTenVertices) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ForestPacking p(10, 3, seed);
    SplitMix64 rng(seed);
    for (int op = 0; op < 300; ++op) {
      const auto u = static_cast<VertexId>(uniform_below(rng, 10));
      const auto v = static_cast<VertexId>((u + 1 + uniform_below(rng, 9)) % 10);
      const auto e = EdgeKey::of(u, v);
      const Weight w = p.weight(e);
      const Weight delta = static_cast<Weight>(uniform_below(rng, 7)) - std::min<Weight>(w, 3);
      p.apply_delta(e, delta);
      ASSERT_EQ(p.weight(e), w + delta);
      ASSERT_TRUE(oracle::packing_violation(p).empty());
    }
  }
}

TEST(ForestPacking, StressInvariants) {
  for (std::size_t k : {1u, 2u, 4u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) stress(12, k, 800, 31 * seed + k);
  }
}

TEST(ForestPacking, PreservesSmallCuts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SplitMix64 rng(seed + 500);
    const std::size_t n = 4 + uniform_below(rng, 7);
    WeightedGraph g;
    for (VertexId v = 0; v < n; ++v) g.add_vertex(v);
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = i + 1; j < n; ++j)
        if (rng.uniform01() < 0.5) g.add_weight(EdgeKey::of(i, j), 1 + static_cast<Weight>(uniform_below(rng, 3)));
    const std::size_t k = 6;
    ForestPacking p(n, k, seed);
    for (const auto& [e, w] : g.weights()) p.apply_delta(e, w);
    // Churn a little so the packing is not just the insertion order.
    for (int t = 0; t < 50; ++t) {
      const auto u = static_cast<VertexId>(uniform_below(rng, n));
      const auto v = static_cast<VertexId>((u + 1 + uniform_below(rng, n - 1)) % n);
      const auto e = EdgeKey::of(u, v);
      p.increment(e);
      p.decrement(e);
    }
    const auto h = p.union_graph();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      const Weight in_g = oracle::cut_of_mask(g, mask);
      const Weight in_h = oracle::cut_of_mask(h, mask);
      if (in_g <= static_cast<Weight>(k)) {
        ASSERT_EQ(in_h, in_g) << "mask " << mask;
      } else {
        ASSERT_GE(in_h, static_cast<Weight>(k));
      }
    }
  }
}
