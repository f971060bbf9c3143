#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>
#include <set>

#include "dynpath/bottleneck.hpp"
#include "dynpath/codec.hpp"

using namespace dynpath;
using boost::multiprecision::cpp_int;

namespace {

// sum a_i * base^(L - i) over labels i in [1, L].
cpp_int encode(const std::vector<std::uint32_t>& counts, std::uint64_t base) {
  cpp_int v = 0;
  for (std::uint32_t c : counts) v = v * base + c;
  return v;
}

std::vector<std::size_t> random_path(std::mt19937_64& rng, std::size_t n, std::size_t range) {
  std::uniform_int_distribution<std::size_t> len(0, n);
  // Narrow label windows make long common prefixes likely.
  std::uniform_int_distribution<std::size_t> lo_pick(1, range);
  const std::size_t lo = lo_pick(rng);
  std::uniform_int_distribution<std::size_t> span(0, 3);
  const std::size_t hi = std::min(range, lo + span(rng));
  std::uniform_int_distribution<std::size_t> label(lo, hi);
  std::vector<std::size_t> res(len(rng));
  for (auto& l : res) l = label(rng);
  return res;
}

}  // namespace

TEST(ListLabeller, AscendingInsertsKeepOrderWithinMoveBound) {
  ListLabeller l;
  const std::size_t t = 2000;
  for (std::size_t i = 0; i < t; ++i) l.insert(static_cast<Weight>(i));
  auto items = l.items();
  ASSERT_EQ(items.size(), t);
  EXPECT_TRUE(std::is_sorted(items.begin(), items.end()));
  const double lg = std::log2(static_cast<double>(t));
  EXPECT_LE(static_cast<double>(l.moves()), ListLabeller::kMoveConstant * t * lg * lg);
  for (std::size_t i = 1; i < t; ++i) {
    EXPECT_LT(l.label(static_cast<Weight>(i - 1)), l.label(static_cast<Weight>(i)));
  }
}

TEST(ListLabeller, InsertThenDeleteIsEmpty) {
  ListLabeller l;
  l.insert(7);
  l.erase(7);
  EXPECT_EQ(l.size(), 0u);
  EXPECT_FALSE(l.contains(7));
  EXPECT_TRUE(l.items().empty());
  EXPECT_THROW(l.erase(7), AbsentItem);
  l.insert(3);
  EXPECT_THROW(l.insert(3), DuplicateItem);
}

TEST(ListLabeller, RandomOpsMatchSortedShadow) {
  std::mt19937_64 rng(41);
  ListLabeller l;
  std::set<Weight> shadow;
  std::uniform_int_distribution<Weight> val(-5000, 5000);
  const std::size_t ops = 10000;
  for (std::size_t op = 0; op < ops; ++op) {
    const Weight x = val(rng);
    if (shadow.count(x) && rng() % 3 == 0) {
      l.erase(x);
      shadow.erase(x);
    } else if (!shadow.count(x)) {
      l.insert(x);
      shadow.insert(x);
    }
    ASSERT_EQ(l.size(), shadow.size());
    if (op % 97 == 0) ASSERT_EQ(l.items(), std::vector<Weight>(shadow.begin(), shadow.end()));
  }
  ASSERT_EQ(l.items(), std::vector<Weight>(shadow.begin(), shadow.end()));
  std::size_t prev = 0;
  for (Weight x : shadow) {
    EXPECT_GT(l.label(x), prev);
    EXPECT_EQ(l.item_at(l.label(x)), x);
    prev = l.label(x);
  }
  const double lg = std::log2(static_cast<double>(ops));
  EXPECT_LE(static_cast<double>(l.moves()), ListLabeller::kMoveConstant * ops * lg * lg);
}

TEST(PathWeightCodec, EmptyIsCanonical) {
  PathWeightCodec c(4);
  EXPECT_EQ(c.compare(c.empty(), c.empty()), Order::kEqual);
  EXPECT_EQ(c.id(c.empty()), c.id(c.empty()));
  auto one = c.concat_edge(c.empty(), 5);
  EXPECT_EQ(c.compare(one, c.empty()), Order::kGreater);
  EXPECT_EQ(c.first_nonzero(c.empty()), std::nullopt);
  EXPECT_EQ(c.first_nonzero(one), 5u);
}

TEST(PathWeightCodec, SmallerLabelIsMoreSignificant) {
  PathWeightCodec c(3);
  auto a = c.concat_edge(c.empty(), 1);
  auto b = c.concat_edge(c.empty(), 2);
  EXPECT_EQ(c.compare(a, b), Order::kGreater);
  EXPECT_EQ(c.compare(b, a), Order::kLess);
}

TEST(PathWeightCodec, MultisetIgnoresOrder) {
  PathWeightCodec c(5);
  auto x = c.concat_edge(c.concat_edge(c.empty(), 3), 17);
  auto y = c.concat_edge(c.concat_edge(c.empty(), 17), 3);
  EXPECT_EQ(c.id(x), c.id(y));
  EXPECT_EQ(c.compare(x, y), Order::kEqual);
}

TEST(PathWeightCodec, RejectsBadLabelsAndForeignHandles) {
  PathWeightCodec c(2);
  EXPECT_THROW(c.concat_edge(c.empty(), 0), LabelOutOfRange);
  EXPECT_THROW(c.concat_edge(c.empty(), 9), LabelOutOfRange);
  PathWeightCodec d(3);
  EXPECT_THROW(c.compare(c.empty(), d.empty()), SizeMismatch);
}

TEST(PathWeightCodec, PersistentHandlesMatchShadowCounts) {
  std::mt19937_64 rng(42);
  const std::size_t n = 6;
  PathWeightCodec c(n);
  std::uniform_int_distribution<std::size_t> label(1, c.range());
  std::vector<PathWeightCodec::Handle> handles{c.empty()};
  std::vector<std::vector<std::uint32_t>> shadows{std::vector<std::uint32_t>(c.range(), 0)};
  const auto bound = static_cast<std::size_t>(std::ceil(std::log2(2.0 * n * n))) + 1;
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, handles.size() - 1);
    const std::size_t from = pick(rng);
    const std::size_t l = label(rng);
    handles.push_back(c.concat_edge(handles[from], l));
    EXPECT_LE(c.last_allocated(), bound);
    auto s = shadows[from];
    ++s[l - 1];
    shadows.push_back(s);
  }
  for (std::size_t i = 0; i < handles.size(); ++i) EXPECT_EQ(c.counts(handles[i]), shadows[i]);
  for (std::size_t i = 0; i < handles.size(); ++i) {
    for (std::size_t j = 0; j < handles.size(); ++j) {
      EXPECT_EQ(c.compare(handles[i], handles[j]) == Order::kEqual, shadows[i] == shadows[j]);
    }
  }
}

TEST(PathWeightCodec, CompareMatchesBigIntegerEvaluation) {
  std::mt19937_64 rng(43);
  for (int pair = 0; pair < 10000; ++pair) {
    const std::size_t n = 1 + pair % 8;
    PathWeightCodec c(n);
    auto build = [&](const std::vector<std::size_t>& labels) {
      auto h = c.empty();
      for (auto l : labels) h = c.concat_edge(h, l);
      return h;
    };
    auto pa = random_path(rng, n, c.range());
    auto pb = pair % 4 == 0 ? pa : random_path(rng, n, c.range());
    if (pair % 4 == 0) std::shuffle(pb.begin(), pb.end(), rng);
    auto a = build(pa), b = build(pb);
    const cpp_int va = encode(c.counts(a), n + 1), vb = encode(c.counts(b), n + 1);
    const Order want = va < vb ? Order::kLess : (va == vb ? Order::kEqual : Order::kGreater);
    ASSERT_EQ(c.compare(a, b), want) << "pair " << pair;
  }
}

TEST(PathWeightCodec, ConcatNodeBound) {
  for (std::size_t n = 1; n <= 12; ++n) {
    PathWeightCodec c(n);
    auto h = c.empty();
    for (std::size_t l = 1; l <= c.range(); l += 3) h = c.concat_edge(h, l);
    EXPECT_LE(c.max_allocated(),
              static_cast<std::size_t>(std::ceil(std::log2(2.0 * n * n))) + 1);
  }
}

namespace {

std::vector<UpdateOp> random_updates(std::mt19937_64& rng, std::size_t n, bool directed,
                                     std::size_t count) {
  DynamicGraph g(n, directed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<Weight> wt(-40, 200);
  std::vector<UpdateOp> ops;
  while (ops.size() < count) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    const Weight w = wt(rng);
    if (!g.has_edge(u, v)) {
      g.insert_edge(u, v, w);
      ops.push_back(InsertEdge{u, v, w});
    } else if (rng() % 2) {
      g.delete_edge(u, v);
      ops.push_back(DeleteEdge{u, v});
    } else {
      g.set_weight(u, v, w);
      ops.push_back(SetWeight{u, v, w});
    }
  }
  return ops;
}

}  // namespace

TEST(FdApbpReference, SingleUpdateEqualsStatic) {
  auto snaps = fd_apbp_reference(3, true, {{0, 1, 5}}, {InsertEdge{1, 2, 2}}, true);
  ASSERT_EQ(snaps.size(), 1u);
  DynamicGraph g(3, true);
  g.insert_edge(0, 1, 5);
  g.insert_edge(1, 2, 2);
  EXPECT_EQ(snaps[0].b, static_apbp(g));
}

TEST(FdApbpReference, OutOfOrderWeightsKeepLabelOrder) {
  std::vector<UpdateOp> ops{InsertEdge{0, 1, 100}, InsertEdge{1, 2, 1},  InsertEdge{0, 2, 50},
                            InsertEdge{2, 3, 75},  InsertEdge{0, 3, 60}, InsertEdge{1, 3, 99}};
  auto snaps = fd_apbp_reference(4, true, {}, ops, true);
  DynamicGraph g(4, true);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    g.apply(ops[i]);
    EXPECT_EQ(snaps[i].b, static_apbp(g));
    for (const auto& a : g.edges()) {
      for (const auto& b : g.edges()) {
        EXPECT_EQ(a.w < b.w, snaps[i].labels(a.u, a.v) < snaps[i].labels(b.u, b.v));
      }
    }
  }
}

TEST(FdApbpReference, MixedTracesEqualStatic) {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 10;
    const bool directed = rep % 2 == 0;
    auto ops = random_updates(rng, n, directed, 30);
    auto snaps = fd_apbp_reference(n, directed, {}, ops, true);
    DynamicGraph g(n, directed);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      g.apply(ops[i]);
      ASSERT_EQ(snaps[i].b, static_apbp(g)) << "update " << i;
    }
  }
}
