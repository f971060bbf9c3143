#include <gtest/gtest.h>

#include <random>

#include "dynpath/earliest_arrival.hpp"
#include "dynpath/reachability.hpp"
#include "oracles.hpp"

using namespace dynpath;

TEST(IncrementalSsr, ChainInsertReachesTail) {
  IncrementalSsr r(3, 0);
  EXPECT_TRUE(r.insert(1, 2).empty());
  auto found = r.insert(0, 1);
  EXPECT_EQ(found, (std::vector<Vertex>{1, 2}));
  EXPECT_TRUE(r.reached(2));
}

TEST(IncrementalSsr, MatchesOracleAndScansEachEdgeAtMostTwice) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 12;
    IncrementalSsr r(n, 0);
    DynamicGraph g(n, true);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int e = 0; e < 40; ++e) {
      Vertex u = pick(rng), v = pick(rng);
      if (g.has_edge(u, v)) continue;
      g.insert_edge(u, v, 1);
      r.insert(u, v);
      auto want = oracle::reach(g, 0);
      for (std::size_t x = 0; x < n; ++x) ASSERT_EQ(r.reached(x), want[x]);
    }
    EXPECT_LE(r.edges_scanned(), 2 * g.edge_count());
  }
}

TEST(DecrementalSsr, MatchesOracleWithinWorkBound) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 10;
    DynamicGraph g(n, true);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<std::pair<Vertex, Vertex>> es;
    for (int e = 0; e < 35; ++e) {
      Vertex u = pick(rng), v = pick(rng);
      if (u == v || g.has_edge(u, v)) continue;
      g.insert_edge(u, v, 1);
      es.emplace_back(u, v);
    }
    DecrementalSsr r(n, 0, es);
    std::vector<Vertex> lost_cb;
    r.set_on_unreach([&](Vertex x) { lost_cb.push_back(x); });
    std::shuffle(es.begin(), es.end(), rng);
    std::size_t lost_total = 0;
    for (auto [u, v] : es) {
      g.delete_edge(u, v);
      auto lost = r.remove(u, v);
      lost_total += lost.size();
      auto want = oracle::reach(g, 0);
      for (std::size_t x = 0; x < n; ++x) ASSERT_EQ(r.reached(x), want[x]);
    }
    EXPECT_EQ(lost_cb.size(), lost_total);
    const std::uint64_t m = r.initial_edges();
    EXPECT_LE(r.work(), 2 * (m + 1) * (n + 1));
  }
}

TEST(DecrementalSsr, LevelsAreBfsDistances) {
  std::vector<std::pair<Vertex, Vertex>> es{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  DecrementalSsr r(4, 0, es);
  EXPECT_EQ(r.level(3), 2);
  r.remove(0, 2);
  EXPECT_EQ(r.level(2), 2);
  EXPECT_EQ(r.level(3), 3);
  auto lost = r.remove(1, 2);
  EXPECT_EQ(lost.size(), 2u);
  EXPECT_FALSE(r.reached(3));
}

TEST(FullyDynamicStReach, BothStrategiesAgree) {
  std::mt19937_64 rng(4);
  const std::size_t n = 8;
  FullyDynamicStReach a(n, 0, 7, StReachStrategy::kRecomputeOnQuery);
  FullyDynamicStReach b(n, 0, 7, StReachStrategy::kIncrementalWithRebuild);
  DynamicGraph g(n, true);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int step = 0; step < 300; ++step) {
    Vertex u = pick(rng), v = pick(rng);
    if (g.has_edge(u, v)) {
      g.delete_edge(u, v);
      a.remove(u, v);
      b.remove(u, v);
    } else {
      g.insert_edge(u, v, 1);
      a.insert(u, v);
      b.insert(u, v);
    }
    bool want = oracle::reach(g, 0)[7];
    ASSERT_EQ(a.query(), want);
    ASSERT_EQ(b.query(), want);
  }
  EXPECT_EQ(a.inserts() + a.deletes(), 300u);
}

TEST(StaticSsea, SmallExamples) {
  DynamicGraph g(3, true);
  g.insert_edge(0, 1, 5);
  g.insert_edge(1, 2, 3);
  auto a = static_ssea(g, 0);
  EXPECT_EQ(a[0], 0);
  EXPECT_EQ(a[1], 5);
  EXPECT_EQ(a[2], std::nullopt);
  g.set_weight(1, 2, 7);
  EXPECT_EQ(static_ssea(g, 0)[2], 7);
}

TEST(StaticSsea, EqualWeightsMayChain) {
  DynamicGraph g(3, true);
  g.insert_edge(0, 1, 4);
  g.insert_edge(1, 2, 4);
  EXPECT_EQ(static_ssea(g, 0)[2], 4);
}

TEST(StaticSsea, MatchesStateOracle) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 60; ++rep) {
    DynamicGraph g(8, rep % 3 != 0);
    std::uniform_int_distribution<int> pick(0, 7);
    std::uniform_int_distribution<Weight> wt(0, 6);
    for (int e = 0; e < 22; ++e) {
      Vertex u = pick(rng), v = pick(rng);
      if (u != v && !g.has_edge(u, v)) g.insert_edge(u, v, wt(rng));
    }
    EXPECT_EQ(static_ssea(g, 0), oracle::arrival(g, 0));
  }
}

TEST(ChainGadget, ReachabilityEncodesArrival) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 7;
    DynamicGraph g(n, true);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<Weight> wt(0, 5);
    std::vector<Edge> edges;
    for (int e = 0; e < 18; ++e) {
      Vertex u = pick(rng), v = pick(rng);
      if (u == v || g.has_edge(u, v)) continue;
      Weight w = wt(rng);
      g.insert_edge(u, v, w);
      edges.push_back({u, v, w});
    }
    auto arcs = chain_gadget_arcs(n, 0, edges);
    DynamicGraph gadget(1 + 2 * edges.size(), true);
    for (auto [a, b] : arcs) {
      if (!gadget.has_edge(a, b)) gadget.insert_edge(a, b, 0);
    }
    auto r = oracle::reach(gadget, 0);
    std::vector<std::optional<Weight>> got(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!r[ChainGadgetLayout::p(e)]) continue;
      auto& slot = got[edges[e].v];
      if (!slot || edges[e].w < *slot) slot = edges[e].w;
    }
    got[0] = 0;
    EXPECT_EQ(got, oracle::arrival(g, 0));
  }
}

namespace {

void run_dynamic_ssea(Mode mode, bool directed, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = 9;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<Weight> wt(0, 8);
  DynamicGraph full(n, directed);
  std::vector<Edge> edges;
  for (int e = 0; e < 30; ++e) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v || full.has_edge(u, v)) continue;
    Weight w = wt(rng);
    full.insert_edge(u, v, w);
    edges.push_back({u, v, w});
  }
  if (mode == Mode::kIncremental) {
    DynamicSsea ds(n, directed, 0, mode, {});
    DynamicGraph g(n, directed);
    for (const auto& e : edges) {
      ds.insert(e.u, e.v, e.w);
      g.insert_edge(e.u, e.v, e.w);
      ASSERT_EQ(ds.arrivals(), oracle::arrival(g, 0));
    }
    // Gadget has 1 + 2 arcs per edge copy plus chain links and source links.
    EXPECT_LE(ds.gadget_edges(), 4 * (directed ? 1 : 2) * edges.size());
  } else {
    DynamicSsea ds(n, directed, 0, mode, edges);
    ASSERT_EQ(ds.arrivals(), oracle::arrival(full, 0));
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges) {
      ds.remove(e.u, e.v);
      full.delete_edge(e.u, e.v);
      ASSERT_EQ(ds.arrivals(), oracle::arrival(full, 0));
    }
  }
}

}  // namespace

TEST(DynamicSsea, IncrementalMatchesOracle) {
  for (int s = 0; s < 25; ++s) run_dynamic_ssea(Mode::kIncremental, s % 2 == 0, 100 + s);
}

TEST(DynamicSsea, DecrementalMatchesOracle) {
  for (int s = 0; s < 25; ++s) run_dynamic_ssea(Mode::kDecremental, s % 2 == 0, 200 + s);
}

TEST(DynamicSsea, FullyDynamicUnsupported) {
  EXPECT_THROW(DynamicSsea(3, true, 0, Mode::kFully, {}), Unsupported);
}
