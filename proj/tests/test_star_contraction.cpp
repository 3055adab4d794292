#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace dynmincut;

namespace {

void apply_deltas(WeightedGraph& g, const std::vector<WeightDelta>& ds) {
  for (const auto& d : ds) g.add_weight(d.key, d.delta);
}

// Contracted weights must be exactly the preimage sizes.
void expect_weight_matches_preimage(const StarContraction& sc) {
  std::size_t mapped = 0;
  for (const auto& [c, w] : sc.contracted_graph().weights()) {
    ASSERT_NE(c.u, c.v);
    ASSERT_TRUE(sc.is_center(c.u) && sc.is_center(c.v));
    const auto pre = sc.preimage_of(c);
    ASSERT_EQ(static_cast<std::size_t>(w), pre.size());
    for (const auto& e : pre) {
      const auto img = sc.image_of(e);
      ASSERT_EQ(img.kind, EdgeImage::Kind::mapped);
      ASSERT_EQ(img.key, c);
    }
    mapped += pre.size();
  }
  std::size_t counted = 0;
  for (const auto& e : sc.graph().edges()) counted += sc.image_of(e).kind == EdgeImage::Kind::mapped;
  ASSERT_EQ(mapped, counted);
}

// With no pending work every image is what the current representatives dictate.
void expect_settled(const StarContraction& sc) {
  ASSERT_EQ(sc.pending_tasks(), 0u);
  for (const auto& e : sc.graph().edges()) ASSERT_EQ(sc.image_of(e), sc.desired_image(e));
  ASSERT_EQ(sc.contracted_graph(), oracle::recontract(sc));
}

// Runs an erdos stream through an instance and checks the delta stream and
// the structural invariants after every update.
void stream_check(std::size_t n, double tau, ContractionMode mode, double c_p, double c_b, std::uint64_t seed,
                  std::size_t steps) {
  StarContraction sc(n, tau, mode, seed, StarConfig{c_p, c_b});
  WeightedGraph shadow(sc.centers());
  GenOptions g;
  g.n = n;
  g.steps = steps;
  g.seed = seed;
  for (const auto& ev : generate_stream(g).events) {
    apply_deltas(shadow, sc.apply_update(ev.edge, ev.sign()));
    ASSERT_EQ(shadow, sc.contracted_graph());
    expect_weight_matches_preimage(sc);
    if (sc.pending_tasks() == 0) expect_settled(sc);
  }
}

StarContraction k4_with_reps(ContractionMode mode) {
  // Search seeds until the samplers settle on rep(2) = 0 and rep(3) = 1.
  for (std::uint64_t seed = 0;; ++seed) {
    auto sc = StarContraction::with_centers(4, 2.0, mode, seed, {0, 1});
    for (VertexId i = 0; i < 4; ++i)
      for (VertexId j = i + 1; j < 4; ++j) sc.apply_update(EdgeKey::of(i, j), UpdateSign::insert);
    if (sc.representative(2) == 0u && sc.representative(3) == 1u) return sc;
  }
}

}  // namespace

TEST(StarContraction, ProbabilityClampsToOne) {
  EXPECT_EQ(center_probability(1024, 512, 800), 1.0);
  EXPECT_DOUBLE_EQ(center_probability(1024, 512, 2), 0.0390625);
  StarContraction sc(64, 4.0, ContractionMode::eager, 1);
  EXPECT_EQ(sc.centers().size(), 64u);
  EXPECT_EQ(sc.contracted_graph().vertex_count(), 64u);
  EXPECT_EQ(sc.contracted_graph().edge_count(), 0u);
}

TEST(StarContraction, CenterCountMatchesSamplingRate) {
  constexpr int kInstances = 400;
  const double p = 0.0390625;
  const double sigma = std::sqrt(1024 * p * (1 - p));
  double total = 0;
  for (int s = 0; s < kInstances; ++s) {
    StarContraction sc(1024, 512, ContractionMode::eager, derive_seed(9, s), StarConfig{2.0, 1.0});
    EXPECT_DOUBLE_EQ(sc.sampling_probability(), p);
    total += static_cast<double>(sc.centers().size());
  }
  EXPECT_NEAR(total / kInstances, 40.0, 3 * sigma / std::sqrt(kInstances));
}

TEST(StarContraction, EdgeBetweenCenters) {
  auto sc = StarContraction::with_centers(4, 2.0, ContractionMode::eager, 0, {1, 3});
  const auto out = sc.apply_update(EdgeKey::of(3, 1), UpdateSign::insert);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].key, EdgeKey::of(1, 3));
  EXPECT_EQ(out[0].delta, 1);
  EXPECT_TRUE(sc.is_complete());
}

TEST(StarContraction, EdgeBetweenLonelyNonCenters) {
  auto sc = StarContraction::with_centers(4, 2.0, ContractionMode::eager, 0, {0});
  EXPECT_TRUE(sc.is_complete());
  const auto out = sc.apply_update(EdgeKey::of(2, 3), UpdateSign::insert);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(sc.image_of(EdgeKey::of(2, 3)).kind, EdgeImage::Kind::unmapped);
  EXPECT_FALSE(sc.is_complete());
}

TEST(StarContraction, PreimageOnK4) {
  const auto sc = k4_with_reps(ContractionMode::eager);
  const std::vector<EdgeKey> want{EdgeKey::of(0, 1), EdgeKey::of(0, 3), EdgeKey::of(1, 2), EdgeKey::of(2, 3)};
  EXPECT_EQ(sc.preimage_of(EdgeKey::of(0, 1)), want);
  EXPECT_EQ(sc.contracted_graph().weight(EdgeKey::of(0, 1)), 4);
  EXPECT_EQ(sc.image_of(EdgeKey::of(0, 2)).kind, EdgeImage::Kind::internal);
  EXPECT_TRUE(sc.preimage_of(EdgeKey::of(0, 3)).empty());
  EXPECT_TRUE(sc.is_complete());
}

TEST(StarContraction, RepresentativeFlipOnK4) {
  for (auto mode : {ContractionMode::eager, ContractionMode::lazy}) {
    auto sc = k4_with_reps(mode);
    WeightedGraph shadow = sc.contracted_graph();
    apply_deltas(shadow, sc.apply_update(EdgeKey::of(2, 0), UpdateSign::remove));
    EXPECT_EQ(sc.representative(2), 1u);
    EXPECT_EQ(shadow, sc.contracted_graph());
    EXPECT_EQ(sc.contracted_graph(), oracle::recontract(sc));
    // (1,2) and (1,3) are internal now; (0,1) and (0,3) still cross.
    EXPECT_EQ(sc.contracted_graph().weight(EdgeKey::of(0, 1)), 2);
    EXPECT_TRUE(sc.is_complete());
  }
}

TEST(StarContraction, IdentityRegimeCopiesGraph) {
  StarContraction sc(10, 2.0, ContractionMode::eager, 4);
  GenOptions g;
  g.n = 10;
  g.steps = 200;
  g.seed = 4;
  for (const auto& ev : generate_stream(g).events) sc.apply_update(ev.edge, ev.sign());
  EXPECT_EQ(sc.contracted_graph(), to_weighted(sc.graph()));
  EXPECT_TRUE(sc.is_complete());
  for (const auto& e : sc.graph().edges()) EXPECT_EQ(sc.preimage_of(e), std::vector<EdgeKey>{e});
  EXPECT_EQ(sc.contracted_graph().total_weight(), static_cast<Weight>(sc.graph().edge_count()));
}

TEST(StarContraction, EmittedDeltasTrackContractedGraphEager) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) stream_check(20, 4.0, ContractionMode::eager, 1.0, 1.0, seed, 400);
}

TEST(StarContraction, EmittedDeltasTrackContractedGraphLazy) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    stream_check(20, 4.0, ContractionMode::lazy, 1.0, 1e-4, seed, 400);
    stream_check(32, 2.0, ContractionMode::lazy, 2.0, 1.0, seed, 300);
  }
}

TEST(StarContraction, LazyBudgetLeavesWorkPendingThenDrains) {
  // c_b tiny: budget is one move per update, so relabels lag behind.
  StarContraction sc(24, 16.0, ContractionMode::lazy, 12, StarConfig{1.0, 1e-6});
  ASSERT_LT(sc.centers().size(), 24u);
  ASSERT_EQ(sc.budget(), 1u);
  GenOptions g;
  g.n = 24;
  g.steps = 600;
  g.seed = 12;
  g.model = StreamModel::dense_regular;
  g.degree = 8;
  bool saw_pending = false;
  for (const auto& ev : generate_stream(g).events) {
    sc.apply_update(ev.edge, ev.sign());
    saw_pending = saw_pending || sc.pending_tasks() > 0;
    if (sc.pending_tasks() > 0) EXPECT_FALSE(sc.is_complete());
  }
  EXPECT_TRUE(saw_pending);
  EXPECT_GT(sc.updates_with_pending(), 0u);
}

TEST(StarContraction, LazyQueueRarelyOccupiedWithDefaultBudget) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    StarContraction sc(64, 8.0, ContractionMode::lazy, seed, StarConfig{1.0, 1.0});
    GenOptions g;
    g.n = 64;
    g.steps = 1500;
    g.seed = seed;
    g.model = StreamModel::dense_regular;
    g.degree = 16;
    for (const auto& ev : generate_stream(g).events) sc.apply_update(ev.edge, ev.sign());
    EXPECT_LE(static_cast<double>(sc.updates_with_pending()) / static_cast<double>(sc.updates()), 0.5);
  }
}

TEST(StarContraction, CompletenessOnCompleteGraph) {
  // K_16, tau = 2, default sampling: the instance is complete after churn.
  int complete = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StarContraction sc(16, 2.0, ContractionMode::eager, seed);
    for (VertexId i = 0; i < 16; ++i)
      for (VertexId j = i + 1; j < 16; ++j) sc.apply_update(EdgeKey::of(i, j), UpdateSign::insert);
    SplitMix64 rng(seed);
    for (int t = 0; t < 20; ++t) {
      // Toggle an edge while keeping every degree at least 2.
      const auto u = static_cast<VertexId>(uniform_below(rng, 16));
      const auto v = static_cast<VertexId>((u + 1 + uniform_below(rng, 15)) % 16);
      const auto e = EdgeKey::of(u, v);
      if (sc.graph().has_edge(e)) {
        if (sc.graph().degree(u) > 2 && sc.graph().degree(v) > 2) sc.apply_update(e, UpdateSign::remove);
      } else {
        sc.apply_update(e, UpdateSign::insert);
      }
    }
    ASSERT_GE(sc.graph().min_degree(), 2u);
    complete += sc.is_complete();
  }
  EXPECT_GE(complete, 198);
}

TEST(StarContraction, ContractedCutNeverBelowOriginal) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    StarContraction sc(10, 2.0, ContractionMode::eager, seed, StarConfig{0.6, 1.0});
    GenOptions g;
    g.n = 10;
    g.steps = 120;
    g.seed = seed;
    for (const auto& ev : generate_stream(g).events) {
      sc.apply_update(ev.edge, ev.sign());
      if (!sc.is_complete() || sc.contracted_graph().vertex_count() < 2) continue;
      const Weight lambda = brute_force_mincut(to_weighted(sc.graph())).value;
      ASSERT_GE(stoer_wagner(sc.contracted_graph()).value, lambda);
    }
  }
}

TEST(StarContraction, EveryEdgeAccountedForWhenComplete) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    StarContraction sc(16, 4.0, ContractionMode::eager, seed, StarConfig{1.0, 1.0});
    GenOptions g;
    g.n = 16;
    g.steps = 300;
    g.seed = seed;
    for (const auto& ev : generate_stream(g).events) {
      sc.apply_update(ev.edge, ev.sign());
      if (!sc.is_complete()) continue;
      std::size_t internal = 0;
      for (const auto& e : sc.graph().edges()) internal += sc.image_of(e).kind == EdgeImage::Kind::internal;
      ASSERT_EQ(static_cast<std::size_t>(sc.contracted_graph().total_weight()) + internal, sc.graph().edge_count());
    }
  }
}

TEST(StarContraction, RepresentativeChangeRate) {
  const double c_p = 1.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t n = 32;
    const double tau = 4.0;
    StarContraction sc(n, tau, ContractionMode::eager, seed, StarConfig{c_p, 1.0});
    GenOptions g;
    g.n = n;
    g.steps = 3000;
    g.seed = seed;
    g.model = StreamModel::dense_regular;
    g.degree = 8;
    const auto stream = generate_stream(g);
    const std::size_t warm = n * g.degree / 2;
    std::size_t i = 0;
    for (; i < warm; ++i) sc.apply_update(stream.events[i].edge, stream.events[i].sign());
    const std::size_t before = sc.rep_changes();
    std::size_t measured = 0;
    for (; i < stream.events.size(); ++i, ++measured) sc.apply_update(stream.events[i].edge, stream.events[i].sign());
    const double rate = static_cast<double>(sc.rep_changes() - before) / static_cast<double>(measured);
    // Degrees stay at least 7 during churn.
    const double bound = c_p * log2_n(n) / std::max(7.0, tau) * 1.5;
    EXPECT_LE(rate, bound) << "seed " << seed;
  }
}

TEST(StarContraction, RejectsBadInput) {
  EXPECT_THROW(StarContraction(4, 0.0, ContractionMode::eager, 0), std::invalid_argument);
  StarContraction sc(4, 1.0, ContractionMode::eager, 0);
  sc.apply_update(EdgeKey::of(0, 1), UpdateSign::insert);
  EXPECT_THROW(sc.apply_update(EdgeKey::of(0, 1), UpdateSign::insert), DuplicateEdgeError);
  EXPECT_THROW(sc.apply_update(EdgeKey::of(1, 2), UpdateSign::remove), MissingEdgeError);
  EXPECT_THROW(sc.image_of(EdgeKey::of(2, 3)), MissingEdgeError);
}
