#include <algorithm>
#include <functional>
#include <map>

#include "dynpath/harness.hpp"

namespace dynpath {

namespace {

using i128 = __int128;

constexpr int kA = 0, kB = 1, kC = 2, kAHat = 3;

void check_mode(Mode mode) {
  if (mode == Mode::kFully) throw BadParameter("reductions are incremental or decremental");
}

void check_fits(i128 value, const char* what) {
  if (value > static_cast<i128>(kInf) - 1) throw OverflowRisk(std::string(what) + " exceeds 64 bits");
}

std::optional<Weight> pair_weight(const FourPartiteInstance& inst, Pair p, std::size_t x,
                                  std::size_t y) {
  return inst.table(p)[x][y];
}
bool has_pair(const FourPartiteInstance& inst, Pair p, std::size_t x, std::size_t y) {
  return pair_weight(inst, p, x, y).has_value();
}

// s = 0, gadgets A, B, C, Â with three layers of n vertices each, t last.
struct ThreeLayer {
  std::size_t n;
  Vertex s() const { return 0; }
  Vertex at(int gadget, int layer, std::size_t idx) const {
    return static_cast<Vertex>(1 + (3 * gadget + layer) * n + idx);
  }
  Vertex t() const { return static_cast<Vertex>(12 * n + 1); }
  std::size_t count() const { return 12 * n + 2; }
};

// Node-weighted gadget G_R(X): layers of n, n, 2n and n vertices.
struct FourLayer {
  std::size_t n;
  std::size_t offset(int layer) const {
    static constexpr std::size_t kMul[] = {0, 1, 2, 4};
    return kMul[layer] * n;
  }
  Vertex at(int gadget, int layer, std::size_t idx) const {
    return static_cast<Vertex>(1 + 5 * n * gadget + offset(layer) + idx);
  }
  Vertex t() const { return static_cast<Vertex>(20 * n + 1); }
  std::size_t count() const { return 20 * n + 2; }
};

struct NodeScale {
  Weight w, p2, p3, p4;
  explicit NodeScale(std::size_t n) {
    const i128 base = 100 * static_cast<i128>(n);
    check_fits(base * base * base * base * 8 * static_cast<i128>(21 * n + 2), "node weights");
    w = static_cast<Weight>(base);
    p2 = w * w;
    p3 = p2 * w;
    p4 = p3 * w;
  }
};

// First-layer weights differ by gadget role; the inner layers are shared.
enum class FirstLayer { kRowSquare, kColumnLinear, kConstant };

void set_gadget_weights(std::vector<Weight>& nw, const FourLayer& L, const NodeScale& sc, int gadget,
                        FirstLayer first) {
  const std::size_t n = L.n;
  for (std::size_t j = 0; j < n; ++j) {
    const Weight jw = static_cast<Weight>(j);
    Weight f = sc.p4;
    if (first == FirstLayer::kRowSquare) f += jw * sc.p2;
    if (first == FirstLayer::kColumnLinear) f += jw * sc.w;
    if (first == FirstLayer::kConstant) f += jw;
    nw[L.at(gadget, 0, j)] = f;
    nw[L.at(gadget, 1, j)] = sc.p4 + jw * sc.p3;
    nw[L.at(gadget, 3, j)] = sc.p4 + jw * sc.p3;
  }
  for (std::size_t j = 0; j < 2 * n; ++j) {
    nw[L.at(gadget, 2, j)] = sc.p4 + (4 * static_cast<Weight>(n) - 2 * static_cast<Weight>(j)) * sc.p3;
  }
}

class Emitter {
 public:
  ReductionBundle b;

  Emitter(std::string reduction, Problem problem, std::size_t n, bool directed, Vertex s,
          std::optional<Vertex> t) {
    b.reduction = std::move(reduction);
    b.mode = Mode::kIncremental;
    auto& h = b.trace.header;
    h.n = n;
    h.directed = directed;
    h.problem = problem;
    h.source = s;
    h.target = t;
    h.mode = Mode::kIncremental;
  }

  void initial(Vertex u, Vertex v, Weight w = 0) { b.trace.header.initial_edges.push_back({u, v, w}); }
  void insert(Vertex u, Vertex v, Weight w = 0) { b.trace.ops.push_back(InsertEdge{u, v, w}); }
  void remove(Vertex u, Vertex v) { b.trace.ops.push_back(DeleteEdge{u, v}); }
  void setw(Vertex u, Vertex v, Weight w) { b.trace.ops.push_back(SetWeight{u, v, w}); }

  QueryCheck& query(QueryKind kind, std::int64_t i, std::int64_t k) {
    b.trace.ops.push_back(Query{kind});
    QueryCheck c;
    c.query = b.checks.size();
    c.i = i;
    c.k = k;
    b.checks.push_back(c);
    return b.checks.back();
  }

  void begin_round(std::int64_t pass = 0, Weight retire = 0) {
    b.rounds.push_back({b.trace.ops.size(), b.trace.ops.size(), pass, retire});
  }
  void end_round() { b.rounds.back().end = b.trace.ops.size(); }

  // Decremental bundles replay the incremental construction backwards.
  ReductionBundle finish(Mode mode, bool reverse_for_decremental = true) {
    if (mode == Mode::kDecremental && reverse_for_decremental) {
      std::vector<std::size_t> order;
      UpdateTrace rt = reverse_trace(b.trace, &order);
      std::vector<QueryCheck> checks(order.size());
      for (std::size_t q = 0; q < order.size(); ++q) {
        checks[q] = b.checks[order[q]];
        checks[q].query = q;
      }
      const std::size_t total = b.trace.ops.size();
      std::vector<Round> rounds;
      for (auto it = b.rounds.rbegin(); it != b.rounds.rend(); ++it) {
        // A reversed weight-dynamic pass retires edges to the level it started from.
        rounds.push_back({total - it->end, total - it->begin, it->pass, it->retire == 0 ? 0 : it->retire - 10});
      }
      b.trace = std::move(rt);
      b.checks = std::move(checks);
      b.rounds = std::move(rounds);
    }
    b.mode = mode;
    b.trace.header.mode = mode;
    validate(b.trace);
    return std::move(b);
  }
};

Json optional_json(const std::optional<Weight>& w) { return w ? Json(*w) : Json(nullptr); }

Json witness3_json(const Witness3Table& t) {
  Json j = Json::array();
  for (const auto& plane : t) {
    Json p = Json::array();
    for (const auto& row : plane) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(optional_json(x));
      p.push_back(r);
    }
    j.push_back(p);
  }
  return j;
}

Json witness2_json(const WitnessTable2& t) {
  Json j = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(optional_json(x));
    j.push_back(r);
  }
  return j;
}

void require_nonempty(std::size_t n) {
  if (n == 0) throw BadParameter("instances need n >= 1");
}

void require_query_count(const OMv3Instance& inst) {
  require_nonempty(inst.n);
  if (inst.queries.size() > inst.n) throw BadParameter("at most n queries for this reduction");
}

// Fixed inter-gadget edges of the three-layer graph, weight w(pair index).
template <class Has, class Wt>
void three_layer_frame(Emitter& e, const ThreeLayer& L, Has has, Wt wt) {
  const std::size_t n = L.n;
  for (std::size_t a = 0; a < n; ++a) {
    e.initial(L.s(), L.at(kA, 0, a), wt(-1, 0, 0));
    e.initial(L.at(kAHat, 2, a), L.t(), wt(3, 0, 0));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (has(0, x, y)) e.initial(L.at(kA, 2, x), L.at(kB, 0, y), wt(0, x, y));
      if (has(1, x, y)) e.initial(L.at(kB, 2, x), L.at(kC, 0, y), wt(1, x, y));
      if (has(2, x, y)) e.initial(L.at(kC, 2, x), L.at(kAHat, 0, y), wt(2, x, y));
    }
  }
}

// Node-weighted frame: s, the four gadgets, t and the fixed edges.
template <class Has>
void four_layer_frame(Emitter& e, const FourLayer& L, Has has) {
  const std::size_t n = L.n;
  for (std::size_t a = 0; a < n; ++a) {
    e.initial(0, L.at(kA, 0, a));
    e.initial(L.at(kAHat, 3, a), L.t());
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (has(0, x, y)) e.initial(L.at(kA, 3, x), L.at(kB, 0, y));
      if (has(1, x, y)) e.initial(L.at(kB, 3, x), L.at(kC, 0, y));
      if (has(2, x, y)) e.initial(L.at(kC, 3, x), L.at(kAHat, 0, y));
    }
  }
  for (int g = 0; g < 4; ++g) {
    for (std::size_t j = 0; j < n; ++j) e.initial(L.at(g, 0, j), L.at(g, 1, j));
  }
}

std::vector<Weight> four_layer_weights(const FourLayer& L, const NodeScale& sc) {
  std::vector<Weight> nw(L.count());
  nw[0] = sc.p4;
  nw[L.t()] = sc.p4;
  set_gadget_weights(nw, L, sc, kA, FirstLayer::kRowSquare);
  set_gadget_weights(nw, L, sc, kB, FirstLayer::kColumnLinear);
  set_gadget_weights(nw, L, sc, kC, FirstLayer::kConstant);
  set_gadget_weights(nw, L, sc, kAHat, FirstLayer::kRowSquare);
  return nw;
}

// Path x2(j) - x3(j + off) - x4(j) of a node-weighted gadget.
std::pair<std::pair<Vertex, Vertex>, std::pair<Vertex, Vertex>> nw_inner(const FourLayer& L, int g,
                                                                         std::size_t j,
                                                                         std::size_t off) {
  return {{L.at(g, 1, j), L.at(g, 2, j + off)}, {L.at(g, 2, j + off), L.at(g, 3, j)}};
}

// Path x1(j) -> x2((j + off) mod n) -> x3(j) of a three-layer gadget.
std::pair<std::pair<Vertex, Vertex>, std::pair<Vertex, Vertex>> inner3(const ThreeLayer& L, int g,
                                                                       std::size_t j,
                                                                       std::size_t off) {
  const std::size_t mid = (j + off) % L.n;
  return {{L.at(g, 0, j), L.at(g, 1, mid)}, {L.at(g, 1, mid), L.at(g, 2, j)}};
}

}  // namespace

const std::vector<std::string>& reduction_names() {
  static const std::vector<std::string> names = {
      "mw4c-stsp", "4c-nwstsp",   "4c-stbp",     "4c-stea", "omv3-stbp",
      "omv3-nwstsp", "omv3-stea", "mw3p-nwsssp", "mw-ssbp"};
  return names;
}

// ---------------------------------------------------------------------------
// Minimum-weight 4-clique

ReductionBundle gen_mw4c_to_stsp(const FourPartiteInstance& inst, Mode mode, bool undirected) {
  check_mode(mode);
  require_nonempty(inst.n);
  if (!inst.completed) throw BadParameter("minimum-weight 4-clique instance must be completed");
  const std::size_t n = inst.n;
  const ThreeLayer L{n};
  Weight max_scaled = 0;
  for (const auto& t : inst.pairs) {
    for (const auto& row : t) {
      for (const auto& w : row) {
        if (!w) throw BadParameter("completed instance has a missing pair");
        check_fits(static_cast<i128>(*w) * 4, "scaled pair weight");
        max_scaled = std::max(max_scaled, 4 * *w);
      }
    }
  }
  const i128 wide_w = 6 * static_cast<i128>(max_scaled) + 1;
  const i128 wide_w0 = 100 * static_cast<i128>(n) * static_cast<i128>(n) * wide_w;
  const i128 max_edge = wide_w0 + static_cast<i128>(n) * static_cast<i128>(n) * wide_w + max_scaled;
  check_fits(max_edge * static_cast<i128>(L.count()), "stSP path length");
  const Weight W = static_cast<Weight>(wide_w);
  const Weight W0 = static_cast<Weight>(wide_w0);
  const Weight nn = static_cast<Weight>(n);
  auto scaled = [&](Pair p, std::size_t x, std::size_t y) { return 4 * *pair_weight(inst, p, x, y); };

  Emitter e("mw4c-stsp", Problem::kStsp, L.count(), !undirected, L.s(), L.t());
  const Pair frame[] = {Pair::kAB, Pair::kBC, Pair::kCA};
  three_layer_frame(
      e, L, [&](int p, std::size_t x, std::size_t y) { return has_pair(inst, frame[p], x, y); },
      [&](int p, std::size_t x, std::size_t y) {
        return p < 0 || p > 2 ? W0 : W0 + scaled(frame[p], x, y);
      });

  for (std::size_t i = n; i-- > 0;) {
    e.begin_round();
    const Weight iw = static_cast<Weight>(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (has_pair(inst, Pair::kBD, j, i)) {
        const Weight w = W0 + iw * W + scaled(Pair::kBD, j, i) / 2;
        auto [x, y] = inner3(L, kB, j, i);
        e.insert(x.first, x.second, w);
        e.insert(y.first, y.second, w);
      }
      if (has_pair(inst, Pair::kCD, j, i)) {
        const Weight w = W0 + iw * W + scaled(Pair::kCD, j, i) / 2;
        auto [x, y] = inner3(L, kC, j, i);
        e.insert(x.first, x.second, w);
        e.insert(y.first, y.second, w);
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      const Weight kw = static_cast<Weight>(k);
      if (has_pair(inst, Pair::kAD, k, i)) {
        const Weight w = W0 + iw * nn * W + kw * W + scaled(Pair::kAD, k, i) / 4;
        for (int g : {kA, kAHat}) {
          auto [x, y] = inner3(L, g, k, i);
          e.insert(x.first, x.second, w);
          e.insert(y.first, y.second, w);
        }
      }
      auto& c = e.query(QueryKind::kStDist, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
      c.base = 13 * W0 + 4 * iw * nn * W + 4 * (kw + iw) * W;
      c.threshold = c.base + 4 * W;
      c.expect = {oracle_min_clique_through(inst, k, i)};
    }
    e.end_round();
  }
  e.b.params = {{"n", n}, {"W", W}, {"W0", W0}, {"scale", 4}, {"undirected", undirected},
                {"instance", to_json(inst)}};
  e.b.oracle = optional_json(oracle_min_weight_4clique(inst));
  return e.finish(mode);
}

// ---------------------------------------------------------------------------
// 4-clique detection

ReductionBundle gen_4c_to_nwstsp(const FourPartiteInstance& inst, Mode mode) {
  check_mode(mode);
  require_nonempty(inst.n);
  const std::size_t n = inst.n;
  const FourLayer L{n};
  const NodeScale sc(n);
  const Weight nn = static_cast<Weight>(n);

  Emitter e("4c-nwstsp", Problem::kNwStsp, L.count(), false, 0, L.t());
  e.b.trace.header.node_weights = four_layer_weights(L, sc);
  const Pair frame[] = {Pair::kAB, Pair::kBC, Pair::kCA};
  four_layer_frame(e, L, [&](int p, std::size_t x, std::size_t y) { return has_pair(inst, frame[p], x, y); });

  for (std::size_t i = 0; i < n; ++i) {
    e.begin_round();
    const Weight iw = static_cast<Weight>(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (has_pair(inst, Pair::kBD, j, i)) {
        auto [x, y] = nw_inner(L, kB, j, i);
        e.insert(x.first, x.second);
        e.insert(y.first, y.second);
      }
      if (has_pair(inst, Pair::kCD, j, i)) {
        auto [x, y] = nw_inner(L, kC, j, i);
        e.insert(x.first, x.second);
        e.insert(y.first, y.second);
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      if (has_pair(inst, Pair::kAD, k, i)) {
        for (int g : {kA, kAHat}) {
          auto [x, y] = nw_inner(L, g, k, i);
          e.insert(x.first, x.second);
          e.insert(y.first, y.second);
        }
      }
      auto& c = e.query(QueryKind::kStDist, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
      c.base = 18 * sc.p4 + (16 * nn - 8 * iw) * sc.p3 + 2 * static_cast<Weight>(k) * sc.p2;
      c.threshold = c.base + sc.p2;
      const auto bc = oracle_first_clique_through(inst, k, i);
      c.expect = {bc ? std::optional<Weight>(static_cast<Weight>(bc->first) * sc.w +
                                             static_cast<Weight>(bc->second))
                     : std::nullopt};
    }
    e.end_round();
  }
  e.b.params = {{"n", n}, {"W", sc.w}, {"instance", to_json(inst)}};
  e.b.oracle = oracle_detect_4clique(inst);
  return e.finish(mode);
}

ReductionBundle gen_4c_to_stbp(const FourPartiteInstance& inst, Mode mode) {
  check_mode(mode);
  require_nonempty(inst.n);
  const std::size_t n = inst.n;
  const ThreeLayer L{n};
  const Weight nn = static_cast<Weight>(n);

  Emitter e("4c-stbp", Problem::kStbp, L.count(), true, L.s(), L.t());
  const Pair frame[] = {Pair::kAB, Pair::kBC, Pair::kCA};
  three_layer_frame(
      e, L, [&](int p, std::size_t x, std::size_t y) { return has_pair(inst, frame[p], x, y); },
      [](int, std::size_t, std::size_t) { return kInf; });

  for (std::size_t i = 0; i < n; ++i) {
    e.begin_round();
    const Weight iw = static_cast<Weight>(i);
    for (std::size_t j = 0; j < n; ++j) {
      for (auto [g, p] : {std::pair{kB, Pair::kBD}, std::pair{kC, Pair::kCD}}) {
        if (!has_pair(inst, p, j, i)) continue;
        auto [x, y] = inner3(L, g, j, i);
        e.insert(x.first, x.second, (iw + 1) * nn);
        e.insert(y.first, y.second, (iw + 1) * nn);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Weight cap = iw * nn + static_cast<Weight>(k) + 1;
      if (has_pair(inst, Pair::kAD, k, i)) {
        for (int g : {kA, kAHat}) {
          auto [x, y] = inner3(L, g, k, i);
          e.insert(x.first, x.second, cap);
          e.insert(y.first, y.second, cap);
        }
      }
      auto& c = e.query(QueryKind::kStBottleneck, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
      c.threshold = cap;
      c.expect = {oracle_first_clique_through(inst, k, i) ? std::optional<Weight>(cap) : std::nullopt};
    }
    e.end_round();
  }
  e.b.params = {{"n", n}, {"instance", to_json(inst)}};
  e.b.oracle = oracle_detect_4clique(inst);
  return e.finish(mode);
}

namespace {

// Weight-dynamic arrival graph shared by the 4-clique and OMv3 variants.
// Gadget edges X1 x X2 and X2 x X3 are complete; fixed edges carry 1,3,5,7,9.
struct ArrivalFrame {
  ThreeLayer L;
  std::map<std::pair<Vertex, Vertex>, Weight> fixed;  // edge -> base weight
  std::map<std::pair<Vertex, Vertex>, Weight> current;

  void build(Emitter& e, const std::function<bool(int, std::size_t, std::size_t)>& has, Weight gadget) {
    const std::size_t n = L.n;
    auto put_fixed = [&](Vertex u, Vertex v, Weight w) {
      fixed[{u, v}] = w;
      current[{u, v}] = w;
      e.initial(u, v, w);
    };
    for (std::size_t a = 0; a < n; ++a) {
      put_fixed(L.s(), L.at(kA, 0, a), 1);
      put_fixed(L.at(kAHat, 2, a), L.t(), 9);
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (has(0, x, y)) put_fixed(L.at(kA, 2, x), L.at(kB, 0, y), 3);
        if (has(1, x, y)) put_fixed(L.at(kB, 2, x), L.at(kC, 0, y), 5);
        if (has(2, x, y)) put_fixed(L.at(kC, 2, x), L.at(kAHat, 0, y), 7);
      }
    }
    for (int g = 0; g < 4; ++g) {
      for (int layer = 0; layer < 2; ++layer) {
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            const Vertex u = L.at(g, layer, x), v = L.at(g, layer + 1, y);
            current[{u, v}] = gadget;
            e.initial(u, v, gadget);
          }
        }
      }
    }
  }

  void set(Emitter& e, std::pair<Vertex, Vertex> edge, Weight w) {
    current[edge] = w;
    e.setw(edge.first, edge.second, w);
  }
  void set_path(Emitter& e, int g, std::size_t j, std::size_t off, Weight w) {
    auto [x, y] = inner3(L, g, j, off);
    set(e, x, w);
    set(e, y, w);
  }

  // Start of pass p: every weight rises by the pass shift.
  void shift(Emitter& e, Weight level) {
    for (auto& [edge, w] : current) {
      auto f = fixed.find(edge);
      const Weight target = f == fixed.end() ? level : f->second + level;
      if (w < target) {
        w = target;
        e.setw(edge.first, edge.second, target);
      }
    }
  }
};

}  // namespace

ReductionBundle gen_4c_to_stea(const FourPartiteInstance& inst, Mode mode) {
  check_mode(mode);
  require_nonempty(inst.n);
  const std::size_t n = inst.n;
  ArrivalFrame f{ThreeLayer{n}, {}, {}};
  Emitter e("4c-stea", Problem::kStea, f.L.count(), true, f.L.s(), f.L.t());
  const Pair frame[] = {Pair::kAB, Pair::kBC, Pair::kCA};
  f.build(e, [&](int p, std::size_t x, std::size_t y) { return has_pair(inst, frame[p], x, y); }, 0);

  for (std::size_t i = 0; i < n; ++i) {
    e.begin_round(0, 10);
    for (std::size_t j = 0; j < n; ++j) {
      if (has_pair(inst, Pair::kBD, j, i)) f.set_path(e, kB, j, i, 4);
      if (has_pair(inst, Pair::kCD, j, i)) f.set_path(e, kC, j, i, 6);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const bool active = has_pair(inst, Pair::kAD, k, i);
      if (active) {
        f.set_path(e, kA, k, i, 2);
        f.set_path(e, kAHat, k, i, 8);
      }
      auto& c = e.query(QueryKind::kStArrival, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
      c.threshold = 9;
      c.expect = {oracle_first_clique_through(inst, k, i) ? std::optional<Weight>(9) : std::nullopt};
      if (active) {
        f.set_path(e, kA, k, i, 10);
        f.set_path(e, kAHat, k, i, 10);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (has_pair(inst, Pair::kBD, j, i)) f.set_path(e, kB, j, i, 10);
      if (has_pair(inst, Pair::kCD, j, i)) f.set_path(e, kC, j, i, 10);
    }
    e.end_round();
  }
  e.b.params = {{"n", n}, {"instance", to_json(inst)}};
  e.b.oracle = oracle_detect_4clique(inst);
  return e.finish(mode);
}

// ---------------------------------------------------------------------------
// OMv3

namespace {

Json omv3_oracle_json(const OMv3Instance& inst) {
  Json j = Json::array();
  for (bool b : oracle_omv3(inst)) j.push_back(b);
  return j;
}

bool omv3_frame(const OMv3Instance& inst, int p, std::size_t x, std::size_t y) {
  // A[a][b], A[b][c], A[c][a]: every frame pair reads the matrix in edge order.
  (void)p;
  return inst.a[x][y];
}

}  // namespace

ReductionBundle gen_omv3_to_stbp(const OMv3Instance& inst, Mode mode) {
  check_mode(mode);
  require_query_count(inst);
  const std::size_t n = inst.n, Q = inst.queries.size();
  const ThreeLayer L{n};
  const Weight nn = static_cast<Weight>(n);
  Emitter e("omv3-stbp", Problem::kStbp, L.count(), true, L.s(), L.t());
  three_layer_frame(
      e, L, [&](int p, std::size_t x, std::size_t y) { return omv3_frame(inst, p, x, y); },
      [](int, std::size_t, std::size_t) { return kInf; });

  auto expect = [&](std::size_t q, std::size_t k, Weight cap) {
    return std::vector<std::optional<Weight>>{oracle_omv3_clause(inst, q, k) ? std::optional<Weight>(cap)
                                                                            : std::nullopt};
  };

  if (mode == Mode::kIncremental) {
    for (std::size_t i = 0; i < Q; ++i) {
      const auto& x = inst.queries[i];
      const Weight iw = static_cast<Weight>(i);
      e.begin_round();
      for (std::size_t j = 0; j < n; ++j) {
        for (auto [g, on] : {std::pair{kB, x.v[j]}, std::pair{kC, x.w[j]}}) {
          if (!on) continue;
          auto [p1, p2] = inner3(L, g, j, i);
          e.insert(p1.first, p1.second, (iw + 1) * nn);
          e.insert(p2.first, p2.second, (iw + 1) * nn);
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const Weight cap = iw * nn + static_cast<Weight>(k) + 1;
        if (x.u[k]) {
          for (int g : {kA, kAHat}) {
            auto [p1, p2] = inner3(L, g, k, i);
            e.insert(p1.first, p1.second, cap);
            e.insert(p2.first, p2.second, cap);
          }
        }
        auto& c = e.query(QueryKind::kStBottleneck, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
        c.threshold = cap;
        c.expect = expect(i, k, cap);
      }
      e.end_round();
    }
  } else {
    // Every query's gadget edges are present from the start, at offset
    // (n - i) mod n, with capacities that decrease with i.
    auto off = [&](std::size_t i) { return (n - i) % n; };
    auto bc_cap = [&](std::size_t i) { return (nn - static_cast<Weight>(i)) * nn; };
    auto a_cap = [&](std::size_t i, std::size_t k) {
      return (nn - 1 - static_cast<Weight>(i)) * nn + (nn - static_cast<Weight>(k));
    };
    for (std::size_t i = 0; i < Q; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (int g : {kB, kC}) {
          auto [p1, p2] = inner3(L, g, j, off(i));
          e.initial(p1.first, p1.second, bc_cap(i));
          e.initial(p2.first, p2.second, bc_cap(i));
        }
        for (int g : {kA, kAHat}) {
          auto [p1, p2] = inner3(L, g, j, off(i));
          e.initial(p1.first, p1.second, a_cap(i, j));
          e.initial(p2.first, p2.second, a_cap(i, j));
        }
      }
    }
    auto drop = [&](int g, std::size_t j, std::size_t i) {
      auto [p1, p2] = inner3(L, g, j, off(i));
      e.remove(p1.first, p1.second);
      e.remove(p2.first, p2.second);
    };
    for (std::size_t i = 0; i < Q; ++i) {
      const auto& x = inst.queries[i];
      e.begin_round();
      for (std::size_t j = 0; j < n; ++j) {
        if (!x.v[j]) drop(kB, j, i);
        if (!x.w[j]) drop(kC, j, i);
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (!x.u[k]) {
          drop(kA, k, i);
          drop(kAHat, k, i);
        }
        auto& c = e.query(QueryKind::kStBottleneck, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
        c.threshold = a_cap(i, k);
        c.expect = expect(i, k, a_cap(i, k));
        if (x.u[k]) {
          drop(kA, k, i);
          drop(kAHat, k, i);
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (x.v[j]) drop(kB, j, i);
        if (x.w[j]) drop(kC, j, i);
      }
      e.end_round();
    }
  }
  e.b.params = {{"n", n}, {"queries", Q}, {"instance", to_json(inst)}};
  e.b.oracle = omv3_oracle_json(inst);
  return e.finish(mode, false);
}

ReductionBundle gen_omv3_to_nwstsp(const OMv3Instance& inst, Mode mode) {
  check_mode(mode);
  require_query_count(inst);
  const std::size_t n = inst.n, Q = inst.queries.size();
  const FourLayer L{n};
  const NodeScale sc(n);
  const Weight nn = static_cast<Weight>(n);
  Emitter e("omv3-nwstsp", Problem::kNwStsp, L.count(), false, 0, L.t());
  e.b.trace.header.node_weights = four_layer_weights(L, sc);
  four_layer_frame(e, L, [&](int p, std::size_t x, std::size_t y) { return omv3_frame(inst, p, x, y); });

  auto expect = [&](std::size_t q, std::size_t k) {
    const auto jl = oracle_omv3_clause(inst, q, k);
    return std::vector<std::optional<Weight>>{
        jl ? std::optional<Weight>(static_cast<Weight>(jl->first) * sc.w + static_cast<Weight>(jl->second))
           : std::nullopt};
  };
  auto path = [&](int g, std::size_t j, std::size_t o, bool add) {
    auto [p1, p2] = nw_inner(L, g, j, o);
    if (add) {
      e.insert(p1.first, p1.second);
      e.insert(p2.first, p2.second);
    } else {
      e.remove(p1.first, p1.second);
      e.remove(p2.first, p2.second);
    }
  };

  if (mode == Mode::kIncremental) {
    for (std::size_t i = 0; i < Q; ++i) {
      const auto& x = inst.queries[i];
      e.begin_round();
      for (std::size_t j = 0; j < n; ++j) {
        if (x.v[j]) path(kB, j, i, true);
        if (x.w[j]) path(kC, j, i, true);
      }
      for (std::size_t k = n; k-- > 0;) {
        if (x.u[k]) {
          path(kA, k, i, true);
          path(kAHat, k, i, true);
        }
        auto& c = e.query(QueryKind::kStDist, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
        c.base = 18 * sc.p4 + (16 * nn - 8 * static_cast<Weight>(i)) * sc.p3 +
                 2 * static_cast<Weight>(k) * sc.p2;
        c.threshold = c.base + sc.p2;
        c.expect = expect(i, k);
      }
      e.end_round();
    }
  } else {
    // Query i reads gadget paths at offset n - i, all present initially.
    for (std::size_t i = 0; i < Q; ++i) {
      for (int g = 0; g < 4; ++g) {
        for (std::size_t j = 0; j < n; ++j) {
          auto [p1, p2] = nw_inner(L, g, j, n - i);
          e.initial(p1.first, p1.second);
          e.initial(p2.first, p2.second);
        }
      }
    }
    for (std::size_t i = 0; i < Q; ++i) {
      const auto& x = inst.queries[i];
      const std::size_t o = n - i;
      e.begin_round();
      for (std::size_t j = 0; j < n; ++j) {
        if (!x.v[j]) path(kB, j, o, false);
        if (!x.w[j]) path(kC, j, o, false);
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (!x.u[k]) {
          path(kA, k, o, false);
          path(kAHat, k, o, false);
        }
        auto& c = e.query(QueryKind::kStDist, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
        c.base = 18 * sc.p4 + (8 * nn + 8 * static_cast<Weight>(i)) * sc.p3 +
                 2 * static_cast<Weight>(k) * sc.p2;
        c.threshold = c.base + sc.p2;
        c.expect = expect(i, k);
        if (x.u[k]) {
          path(kA, k, o, false);
          path(kAHat, k, o, false);
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (x.v[j]) path(kB, j, o, false);
        if (x.w[j]) path(kC, j, o, false);
      }
      e.end_round();
    }
  }
  e.b.params = {{"n", n}, {"queries", Q}, {"W", sc.w}, {"instance", to_json(inst)}};
  e.b.oracle = omv3_oracle_json(inst);
  return e.finish(mode, false);
}

ReductionBundle gen_omv3_to_stea(const OMv3Instance& inst, Mode mode) {
  check_mode(mode);
  require_nonempty(inst.n);
  const std::size_t n = inst.n, Q = inst.queries.size();
  if (mode == Mode::kDecremental && Q > n) throw BadParameter("at most n queries for this reduction");
  const bool inc = mode == Mode::kIncremental;
  ArrivalFrame f{ThreeLayer{n}, {}, {}};
  Emitter e("omv3-stea", Problem::kStea, f.L.count(), true, f.L.s(), f.L.t());
  f.build(e, [&](int p, std::size_t x, std::size_t y) { return omv3_frame(inst, p, x, y); }, inc ? 0 : 10);

  for (std::size_t q = 0; q < Q; ++q) {
    const auto& x = inst.queries[q];
    const std::size_t pass = q / n, off = q % n;
    const Weight lvl = 10 * static_cast<Weight>(pass);
    if (inc && off == 0 && pass > 0) f.shift(e, lvl);
    const Weight retire = inc ? lvl + 10 : 0;
    e.begin_round(static_cast<std::int64_t>(pass), retire);
    for (std::size_t j = 0; j < n; ++j) {
      if (x.v[j]) f.set_path(e, kB, j, off, lvl + 4);
      if (x.w[j]) f.set_path(e, kC, j, off, lvl + 6);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (x.u[k]) {
        f.set_path(e, kA, k, off, lvl + 2);
        f.set_path(e, kAHat, k, off, lvl + 8);
      }
      auto& c = e.query(QueryKind::kStArrival, static_cast<std::int64_t>(q), static_cast<std::int64_t>(k));
      c.threshold = lvl + 9;
      c.expect = {oracle_omv3_clause(inst, q, k) ? std::optional<Weight>(lvl + 9) : std::nullopt};
      if (x.u[k]) {
        f.set_path(e, kA, k, off, retire);
        f.set_path(e, kAHat, k, off, retire);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (x.v[j]) f.set_path(e, kB, j, off, retire);
      if (x.w[j]) f.set_path(e, kC, j, off, retire);
    }
    e.end_round();
  }
  e.b.params = {{"n", n}, {"queries", Q}, {"instance", to_json(inst)}};
  e.b.oracle = omv3_oracle_json(inst);
  return e.finish(mode, false);
}

// ---------------------------------------------------------------------------
// Minimum witnesses

ReductionBundle gen_mw3p_to_nwsssp(const MinWitness3Instance& inst, Mode mode) {
  check_mode(mode);
  require_nonempty(inst.n);
  const std::size_t n = inst.n;
  const FourLayer L{n};
  const NodeScale sc(n);
  const Weight nn = static_cast<Weight>(n);
  auto c1 = [&](std::size_t l) { return static_cast<Vertex>(1 + 10 * n + l); };
  const std::size_t count = 11 * n + 1;

  Emitter e("mw3p-nwsssp", Problem::kNwSssp, count, false, 0, std::nullopt);
  std::vector<Weight> nw(count);
  nw[0] = sc.p4;
  set_gadget_weights(nw, L, sc, kA, FirstLayer::kRowSquare);
  set_gadget_weights(nw, L, sc, kB, FirstLayer::kColumnLinear);
  for (std::size_t l = 0; l < n; ++l) nw[c1(l)] = sc.p4 + static_cast<Weight>(l);
  e.b.trace.header.node_weights = std::move(nw);

  for (std::size_t r = 0; r < n; ++r) {
    e.initial(0, L.at(kA, 0, r));
    e.initial(L.at(kA, 0, r), L.at(kA, 1, r));
    e.initial(L.at(kB, 0, r), L.at(kB, 1, r));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (inst.a[x][j]) e.initial(L.at(kA, 3, x), L.at(kB, 0, j));
      if (inst.c[x][j]) e.initial(L.at(kB, 3, j), c1(x));
    }
  }
  std::vector<Vertex> targets(n);
  for (std::size_t l = 0; l < n; ++l) targets[l] = c1(l);
  const auto oracle = oracle_min_witness3(inst);

  for (std::size_t i = 0; i < n; ++i) {
    e.begin_round();
    for (std::size_t j = 0; j < n; ++j) {
      if (!inst.d[i][j]) continue;
      auto [p1, p2] = nw_inner(L, kB, j, i);
      e.insert(p1.first, p1.second);
      e.insert(p2.first, p2.second);
    }
    for (std::size_t k = n; k-- > 0;) {
      auto [p1, p2] = nw_inner(L, kA, k, i);
      e.insert(p1.first, p1.second);
      e.insert(p2.first, p2.second);
      auto& c = e.query(QueryKind::kSsspAll, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k));
      c.base = 10 * sc.p4 + (8 * nn - 4 * static_cast<Weight>(i)) * sc.p3 + static_cast<Weight>(k) * sc.p2;
      c.threshold = c.base + sc.p2;
      c.targets = targets;
      for (std::size_t l = 0; l < n; ++l) c.expect.push_back(oracle[k][l][i]);
    }
    e.end_round();
  }
  e.b.params = {{"n", n}, {"W", sc.w}, {"instance", to_json(inst)}};
  e.b.oracle = witness3_json(oracle);
  return e.finish(mode);
}

ReductionBundle gen_mw_to_ssbp(const MinWitnessInstance& inst, Mode mode) {
  check_mode(mode);
  require_nonempty(inst.n);
  const std::size_t n = inst.n;
  const Weight nn = static_cast<Weight>(n);
  auto u = [](std::size_t i) { return static_cast<Vertex>(1 + i); };
  auto v = [&](std::size_t k) { return static_cast<Vertex>(1 + n + k); };
  auto w = [&](std::size_t j) { return static_cast<Vertex>(1 + 2 * n + j); };

  Emitter e("mw-ssbp", Problem::kSsbp, 3 * n + 1, true, 0, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (inst.a[i][k]) e.initial(u(i), v(k), (static_cast<Weight>(i) + 1) * nn - static_cast<Weight>(k));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (inst.b[k][j]) e.initial(v(k), w(j), kInf);
    }
  }
  std::vector<Vertex> targets(n);
  for (std::size_t j = 0; j < n; ++j) targets[j] = w(j);
  const auto oracle = oracle_min_witness(inst);

  for (std::size_t i = 0; i < n; ++i) {
    e.begin_round();
    e.insert(0, u(i), kInf);
    auto& c = e.query(QueryKind::kSsbpAll, static_cast<std::int64_t>(i), 0);
    c.threshold = static_cast<Weight>(i) * nn + 1;
    c.base = (static_cast<Weight>(i) + 1) * nn;
    c.targets = targets;
    c.expect = oracle[i];
    e.end_round();
  }
  e.b.params = {{"n", n}, {"instance", to_json(inst)}};
  e.b.oracle = witness2_json(oracle);
  return e.finish(mode);
}

// ---------------------------------------------------------------------------
// Dispatch

ReductionBundle generate_bundle(const std::string& reduction, const Json& instance, Mode mode) {
  if (reduction == "mw4c-stsp") {
    auto inst = four_partite_from_json(instance);
    if (!inst.completed) inst.complete();
    return gen_mw4c_to_stsp(inst, mode, instance.value("undirected", false));
  }
  if (reduction == "4c-nwstsp") return gen_4c_to_nwstsp(four_partite_from_json(instance), mode);
  if (reduction == "4c-stbp") return gen_4c_to_stbp(four_partite_from_json(instance), mode);
  if (reduction == "4c-stea") return gen_4c_to_stea(four_partite_from_json(instance), mode);
  if (reduction == "omv3-stbp") return gen_omv3_to_stbp(omv3_from_json(instance), mode);
  if (reduction == "omv3-nwstsp") return gen_omv3_to_nwstsp(omv3_from_json(instance), mode);
  if (reduction == "omv3-stea") return gen_omv3_to_stea(omv3_from_json(instance), mode);
  if (reduction == "mw3p-nwsssp") return gen_mw3p_to_nwsssp(min_witness3_from_json(instance), mode);
  if (reduction == "mw-ssbp") return gen_mw_to_ssbp(min_witness_from_json(instance), mode);
  throw BadParameter("unknown reduction: " + reduction);
}

ReductionBundle generate_random_bundle(const std::string& reduction, std::size_t n, Mode mode,
                                       std::uint64_t seed) {
  if (reduction == "mw4c-stsp") {
    auto inst = random_four_partite(n, 0.6, 20, seed);
    inst.complete();
    return gen_mw4c_to_stsp(inst, mode);
  }
  if (reduction.rfind("4c-", 0) == 0) {
    return generate_bundle(reduction, to_json(random_four_partite(n, 0.35, 20, seed)), mode);
  }
  if (reduction.rfind("omv3-", 0) == 0) {
    return generate_bundle(reduction, to_json(random_omv3(n, n, 0.4, seed)), mode);
  }
  if (reduction == "mw3p-nwsssp") return gen_mw3p_to_nwsssp(random_min_witness3(n, 0.4, seed), mode);
  if (reduction == "mw-ssbp") return gen_mw_to_ssbp(random_min_witness(n, 0.3, seed), mode);
  throw BadParameter("unknown reduction: " + reduction);
}

}  // namespace dynpath
