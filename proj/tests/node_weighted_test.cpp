#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "dynpath/node_weighted.hpp"
#include "oracles.hpp"

using namespace dynpath;

namespace {

// Minimum over all simple paths, by exhaustive depth-first enumeration.
oracle::Dist simple_paths(const DynamicGraph& g, Vertex s) {
  oracle::Dist best(g.n());
  std::vector<bool> on(g.n(), false);
  std::function<void(Vertex, Weight)> go = [&](Vertex v, Weight cost) {
    if (!best[v] || cost < *best[v]) best[v] = cost;
    on[v] = true;
    for (const auto& [w, unused] : g.out(v)) {
      (void)unused;
      if (!on[w]) go(w, cost + g.node_weight(w));
    }
    on[v] = false;
  };
  go(s, g.node_weight(s));
  return best;
}

DynamicGraph random_nw_graph(std::mt19937_64& rng, std::size_t n, std::size_t tries, bool directed) {
  DynamicGraph g(n, directed);
  std::uniform_int_distribution<Weight> nw(0, 9);
  std::vector<Weight> ws(n);
  for (auto& w : ws) w = nw(rng);
  g.set_node_weights(ws);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  for (std::size_t e = 0; e < tries; ++e) {
    Vertex u = pick(rng), v = pick(rng);
    if (u != v && !g.has_edge(u, v)) g.insert_edge(u, v, 1);
  }
  return g;
}

}  // namespace

TEST(StaticNwSp, SingleEdgeCountsBothEndpoints) {
  DynamicGraph g(2, true);
  g.set_node_weights({2, 3});
  g.insert_edge(0, 1, 100);
  auto d = static_nw_sssp(g, 0);
  EXPECT_EQ(d[0], 2);
  EXPECT_EQ(d[1], 5);
  EXPECT_EQ(static_nw_sssp(g, 1)[1], 3);
}

TEST(StaticNwSp, MatchesSimplePathEnumeration) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    auto g = random_nw_graph(rng, 10, 22, rep % 2 == 0);
    auto all = static_nw_apsp(g);
    for (Vertex s = 0; s < 10; ++s) {
      EXPECT_EQ(all[s], simple_paths(g, s));
      EXPECT_EQ(all[s], oracle::node_weighted(g, s));
    }
  }
}

TEST(StaticNwSp, TriangleInequalityWithMiddleCorrection) {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 20; ++rep) {
    auto g = random_nw_graph(rng, 9, 25, rep % 2 == 0);
    auto d = static_nw_apsp(g);
    for (Vertex u = 0; u < 9; ++u) {
      for (Vertex v = 0; v < 9; ++v) {
        for (Vertex w = 0; w < 9; ++w) {
          if (!d[u][v] || !d[v][w]) continue;
          ASSERT_TRUE(d[u][w]);
          EXPECT_LE(*d[u][w], *d[u][v] + *d[v][w] - g.node_weight(v));
        }
      }
    }
  }
}

TEST(BatchedNwSp, EmptyBufferEqualsSnapshotRow) {
  std::mt19937_64 rng(33);
  auto g = random_nw_graph(rng, 9, 20, true);
  BatchedNwSp b(9, true, g.node_weights(), 0, 0.0, g.edges());
  EXPECT_EQ(b.batch_size(), 1u);
  b.insert(3, 8);
  EXPECT_EQ(b.buffered(), 0u);
  g.insert_edge(3, 8, 0);
  EXPECT_EQ(b.values(), b.snapshot_row(0));
  EXPECT_EQ(b.values(), static_nw_sssp(g, 0));
}

TEST(BatchedNwSp, AlternatesSnapshotSegmentsAndBufferedEdges) {
  // 0 -> 1 (old) -> 2 (new) -> 3 (old) -> 4 (new) -> 5 (old); detour via 6 is dear.
  std::vector<Weight> wt{1, 1, 1, 1, 1, 1, 50, 1};
  BatchedNwSp b(8, true, wt, 0, 1.0, {{0, 1, 0}, {2, 3, 0}, {4, 5, 0}, {0, 6, 0}, {6, 5, 0}});
  EXPECT_EQ(b.value(5), 52);
  b.insert(1, 2);
  b.insert(3, 4);
  EXPECT_EQ(b.buffered(), 2u);
  EXPECT_EQ(b.value(5), 6);
  EXPECT_EQ(b.values()[5], 6);
  EXPECT_EQ(b.values()[4], 5);
}

TEST(BatchedNwSp, RandomInsertionsMatchRecompute) {
  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 12;
    const bool directed = rep % 2 == 0;
    std::uniform_int_distribution<Weight> nw(0, 9);
    std::vector<Weight> ws(n);
    for (auto& w : ws) w = nw(rng);
    DynamicGraph g(n, directed);
    g.set_node_weights(ws);
    BatchedNwSp b(n, directed, ws, 0, 0.5);
    const Vertex t = 11;
    std::uniform_int_distribution<int> pick(0, n - 1);
    int inserted = 0;
    while (inserted < 24) {
      Vertex u = pick(rng), v = pick(rng);
      if (u == v || g.has_edge(u, v)) continue;
      g.insert_edge(u, v, 0);
      b.insert(u, v);
      ++inserted;
      auto want = static_nw_sssp(g, 0);
      ASSERT_EQ(b.values(), want);
      ASSERT_EQ(b.value(t), want[t]);
      ASSERT_LT(b.buffered(), b.batch_size() * (directed ? 1 : 2));
    }
  }
}

TEST(BatchedNwSp, DeleteRejected) {
  BatchedNwSp b(3, true, {1, 1, 1}, 0, 0.5, {{0, 1, 0}});
  EXPECT_THROW(b.remove(0, 1), MonotonicityViolation);
  EXPECT_THROW(BatchedNwSp(3, true, {1, -1, 1}, 0), BadParameter);
}
