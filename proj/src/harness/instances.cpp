#include <algorithm>
#include <random>
#include <set>

#include "dynpath/harness.hpp"

namespace dynpath {

namespace {

BoolGrid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  BoolGrid g(rows, std::vector<bool>(cols));
  for (auto& row : g) {
    for (std::size_t j = 0; j < cols; ++j) row[j] = bit(rng);
  }
  return g;
}

std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<bool> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = bit(rng);
  return v;
}

Json grid_json(const BoolGrid& g) {
  Json j = Json::array();
  for (const auto& row : g) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    j.push_back(r);
  }
  return j;
}

BoolGrid grid_from_json(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) throw BadParameter(std::string(what) + " must have n rows");
  BoolGrid g(n, std::vector<bool>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw BadParameter(std::string(what) + " must have n columns");
    }
    for (std::size_t c = 0; c < n; ++c) g[r][c] = j[r][c].get<int>() != 0;
  }
  return g;
}

std::vector<bool> bits_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw BadParameter("query vectors must have length n");
  std::vector<bool> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = j[i].get<int>() != 0;
  return v;
}

constexpr const char* kPairNames[] = {"ab", "bc", "ca", "ad", "bd", "cd"};

// Endpoint order of each pair table, as (first part, second part) over A=0..D=3.
constexpr std::pair<int, int> kPairParts[] = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};

}  // namespace

// ---------------------------------------------------------------------------
// Four-partite instances

FourPartiteInstance::FourPartiteInstance(std::size_t n_, Weight w_bound_) : n(n_), w_bound(w_bound_) {
  for (auto& t : pairs) t.assign(n, std::vector<std::optional<Weight>>(n));
}

std::optional<Weight> FourPartiteInstance::clique_weight(std::size_t a, std::size_t b,
                                                         std::size_t c, std::size_t d) const {
  const std::size_t idx[4] = {a, b, c, d};
  Weight sum = 0;
  for (int p = 0; p < 6; ++p) {
    const auto& w = pairs[p][idx[kPairParts[p].first]][idx[kPairParts[p].second]];
    if (!w) return std::nullopt;
    sum += *w;
  }
  return sum;
}

void FourPartiteInstance::complete() {
  for (auto& t : pairs) {
    for (auto& row : t) {
      for (auto& w : row) {
        if (!w) w = completion_weight();
      }
    }
  }
  completed = true;
}

FourPartiteInstance random_four_partite(std::size_t n, double density, Weight max_weight,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<Weight> wt(0, max_weight);
  FourPartiteInstance inst(n, max_weight + 1);
  for (auto& t : inst.pairs) {
    for (auto& row : t) {
      for (auto& w : row) {
        if (edge(rng)) w = wt(rng);
      }
    }
  }
  return inst;
}

OMv3Instance random_omv3(std::size_t n, std::size_t queries, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OMv3Instance inst;
  inst.n = n;
  inst.a = random_grid(rng, n, n, density);
  for (std::size_t q = 0; q < queries; ++q) {
    OMv3Query x;
    x.u = random_bits(rng, n, density);
    x.v = random_bits(rng, n, density);
    x.w = random_bits(rng, n, density);
    inst.queries.push_back(std::move(x));
  }
  return inst;
}

MinWitness3Instance random_min_witness3(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MinWitness3Instance inst;
  inst.n = n;
  inst.a = random_grid(rng, n, n, density);
  inst.c = random_grid(rng, n, n, density);
  inst.d = random_grid(rng, n, n, density);
  return inst;
}

MinWitnessInstance random_min_witness(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MinWitnessInstance inst;
  inst.n = n;
  inst.a = random_grid(rng, n, n, density);
  inst.b = random_grid(rng, n, n, density);
  return inst;
}

Json to_json(const FourPartiteInstance& inst) {
  Json j{{"n", inst.n}, {"w_bound", inst.w_bound}, {"completed", inst.completed}};
  for (int p = 0; p < 6; ++p) {
    Json t = Json::array();
    for (const auto& row : inst.pairs[p]) {
      Json r = Json::array();
      for (const auto& w : row) r.push_back(w ? Json(*w) : Json(nullptr));
      t.push_back(r);
    }
    j[kPairNames[p]] = t;
  }
  return j;
}

Json to_json(const OMv3Instance& inst) {
  Json qs = Json::array();
  auto bits = [](const std::vector<bool>& v) {
    Json a = Json::array();
    for (bool b : v) a.push_back(b ? 1 : 0);
    return a;
  };
  for (const auto& q : inst.queries) qs.push_back({{"u", bits(q.u)}, {"v", bits(q.v)}, {"w", bits(q.w)}});
  return {{"n", inst.n}, {"a", grid_json(inst.a)}, {"queries", qs}};
}

Json to_json(const MinWitness3Instance& inst) {
  return {{"n", inst.n}, {"a", grid_json(inst.a)}, {"c", grid_json(inst.c)}, {"d", grid_json(inst.d)}};
}

Json to_json(const MinWitnessInstance& inst) {
  return {{"n", inst.n}, {"a", grid_json(inst.a)}, {"b", grid_json(inst.b)}};
}

FourPartiteInstance four_partite_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    FourPartiteInstance inst(n, j.at("w_bound").get<Weight>());
    for (int p = 0; p < 6; ++p) {
      const Json& t = j.at(kPairNames[p]);
      if (!t.is_array() || t.size() != n) throw BadParameter("pair table must have n rows");
      for (std::size_t x = 0; x < n; ++x) {
        if (!t[x].is_array() || t[x].size() != n) throw BadParameter("pair table must have n columns");
        for (std::size_t y = 0; y < n; ++y) {
          if (!t[x][y].is_null()) {
            const Weight w = t[x][y].get<Weight>();
            if (w < 0) throw BadParameter("pair weights must be non-negative");
            inst.pairs[p][x][y] = w;
          }
        }
      }
    }
    inst.completed = j.value("completed", false);
    return inst;
  } catch (const Json::exception& e) {
    throw BadParameter(std::string("four-partite instance: ") + e.what());
  }
}

OMv3Instance omv3_from_json(const Json& j) {
  try {
    OMv3Instance inst;
    inst.n = j.at("n").get<std::size_t>();
    inst.a = grid_from_json(j.at("a"), inst.n, "a");
    for (const auto& q : j.at("queries")) {
      inst.queries.push_back({bits_from_json(q.at("u"), inst.n), bits_from_json(q.at("v"), inst.n),
                              bits_from_json(q.at("w"), inst.n)});
    }
    return inst;
  } catch (const Json::exception& e) {
    throw BadParameter(std::string("omv3 instance: ") + e.what());
  }
}

MinWitness3Instance min_witness3_from_json(const Json& j) {
  try {
    MinWitness3Instance inst;
    inst.n = j.at("n").get<std::size_t>();
    inst.a = grid_from_json(j.at("a"), inst.n, "a");
    inst.c = grid_from_json(j.at("c"), inst.n, "c");
    inst.d = grid_from_json(j.at("d"), inst.n, "d");
    return inst;
  } catch (const Json::exception& e) {
    throw BadParameter(std::string("min-witness-3 instance: ") + e.what());
  }
}

MinWitnessInstance min_witness_from_json(const Json& j) {
  try {
    MinWitnessInstance inst;
    inst.n = j.at("n").get<std::size_t>();
    inst.a = grid_from_json(j.at("a"), inst.n, "a");
    inst.b = grid_from_json(j.at("b"), inst.n, "b");
    return inst;
  } catch (const Json::exception& e) {
    throw BadParameter(std::string("min-witness instance: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Oracles

std::optional<Weight> oracle_min_weight_4clique(const FourPartiteInstance& inst) {
  std::optional<Weight> best;
  for (std::size_t a = 0; a < inst.n; ++a) {
    for (std::size_t d = 0; d < inst.n; ++d) {
      auto w = oracle_min_clique_through(inst, a, d);
      if (w && (!best || *w < *best)) best = w;
    }
  }
  return best;
}

bool oracle_detect_4clique(const FourPartiteInstance& inst) {
  for (std::size_t a = 0; a < inst.n; ++a) {
    for (std::size_t d = 0; d < inst.n; ++d) {
      if (oracle_first_clique_through(inst, a, d)) return true;
    }
  }
  return false;
}

std::optional<Weight> oracle_min_clique_through(const FourPartiteInstance& inst, std::size_t a,
                                                std::size_t d) {
  std::optional<Weight> best;
  for (std::size_t b = 0; b < inst.n; ++b) {
    for (std::size_t c = 0; c < inst.n; ++c) {
      auto w = inst.clique_weight(a, b, c, d);
      if (w && (!best || *w < *best)) best = w;
    }
  }
  return best;
}

std::optional<std::pair<std::size_t, std::size_t>> oracle_first_clique_through(
    const FourPartiteInstance& inst, std::size_t a, std::size_t d) {
  for (std::size_t b = 0; b < inst.n; ++b) {
    for (std::size_t c = 0; c < inst.n; ++c) {
      if (inst.clique_weight(a, b, c, d)) return std::make_pair(b, c);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> oracle_omv3_clause(const OMv3Instance& inst,
                                                                      std::size_t q, std::size_t k) {
  const auto& x = inst.queries[q];
  if (!x.u[k]) return std::nullopt;
  for (std::size_t j = 0; j < inst.n; ++j) {
    for (std::size_t l = 0; l < inst.n; ++l) {
      if (x.v[j] && x.w[l] && inst.a[k][j] && inst.a[j][l] && inst.a[l][k]) {
        return std::make_pair(j, l);
      }
    }
  }
  return std::nullopt;
}

std::vector<bool> oracle_omv3(const OMv3Instance& inst) {
  std::vector<bool> res(inst.queries.size(), false);
  for (std::size_t q = 0; q < inst.queries.size(); ++q) {
    for (std::size_t k = 0; k < inst.n && !res[q]; ++k) res[q] = oracle_omv3_clause(inst, q, k).has_value();
  }
  return res;
}

Witness3Table oracle_min_witness3(const MinWitness3Instance& inst) {
  const std::size_t n = inst.n;
  Witness3Table t(n, std::vector<std::vector<std::optional<std::int64_t>>>(
                         n, std::vector<std::optional<std::int64_t>>(n)));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (inst.a[k][j] && inst.c[l][j] && inst.d[i][j]) {
            t[k][l][i] = static_cast<std::int64_t>(j);
            break;
          }
        }
      }
    }
  }
  return t;
}

WitnessTable2 oracle_min_witness(const MinWitnessInstance& inst) {
  const std::size_t n = inst.n;
  WitnessTable2 t(n, std::vector<std::optional<std::int64_t>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (inst.a[i][k] && inst.b[k][j]) {
          t[i][j] = static_cast<std::int64_t>(k);
          break;
        }
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Random traces

UpdateTrace random_trace(const RandomTraceSpec& spec, std::uint64_t seed) {
  if (spec.n < 2) throw BadParameter("random traces need at least two vertices");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(spec.n) - 1);
  const bool bottleneck = spec.problem == Problem::kStbp || spec.problem == Problem::kSsbp;
  std::uniform_int_distribution<Weight> wt(bottleneck ? 1 : 0, spec.max_weight);
  std::bernoulli_distribution ask(spec.query_rate);

  UpdateTrace t;
  auto& h = t.header;
  h.n = spec.n;
  h.directed = spec.directed;
  h.problem = spec.problem;
  h.mode = spec.mode;
  h.source = 0;
  const bool st = spec.problem == Problem::kStsp || spec.problem == Problem::kNwStsp ||
                  spec.problem == Problem::kStbp || spec.problem == Problem::kStea ||
                  spec.problem == Problem::kStReach;
  if (st) {
    std::uniform_int_distribution<Vertex> tgt(1, static_cast<Vertex>(spec.n) - 1);
    h.target = tgt(rng);
  }
  if (spec.problem == Problem::kNwStsp || spec.problem == Problem::kNwSssp) {
    h.node_weights.resize(spec.n);
    for (auto& w : h.node_weights) w = wt(rng);
  }
  QueryKind kind;
  switch (spec.problem) {
    case Problem::kStsp:
    case Problem::kNwStsp:
      kind = QueryKind::kStDist;
      break;
    case Problem::kSssp:
    case Problem::kNwSssp:
      kind = QueryKind::kSsspAll;
      break;
    case Problem::kStbp:
      kind = QueryKind::kStBottleneck;
      break;
    case Problem::kSsbp:
      kind = QueryKind::kSsbpAll;
      break;
    case Problem::kStea:
      kind = QueryKind::kStArrival;
      break;
    case Problem::kSsea:
      kind = QueryKind::kSseaAll;
      break;
    default:
      kind = QueryKind::kStReach;
  }

  DynamicGraph g(spec.n, spec.directed, Mode::kFully);
  const std::size_t max_edges = spec.directed ? spec.n * (spec.n - 1) : spec.n * (spec.n - 1) / 2;
  auto random_edge = [&](bool present) -> std::optional<std::pair<Vertex, Vertex>> {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Vertex u = pick(rng), v = pick(rng);
      if (u != v && g.has_edge(u, v) == present) return std::make_pair(u, v);
    }
    std::vector<std::pair<Vertex, Vertex>> all;
    for (Vertex u = 0; u < static_cast<Vertex>(spec.n); ++u) {
      for (Vertex v = 0; v < static_cast<Vertex>(spec.n); ++v) {
        if (u != v && g.has_edge(u, v) == present && (spec.directed || u < v)) all.emplace_back(u, v);
      }
    }
    if (all.empty()) return std::nullopt;
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
  };

  // Decremental and weight-dynamic traces need a starting graph.
  std::size_t initial = 0;
  if (spec.weight_updates || spec.mode != Mode::kIncremental) {
    initial = std::min(max_edges, spec.weight_updates ? max_edges / 2 : std::max<std::size_t>(spec.ops, 1));
  }
  while (g.edge_count() < initial) {
    auto e = random_edge(false);
    g.insert_edge(e->first, e->second, wt(rng));
  }
  h.initial_edges = g.edges();

  while (t.ops.size() < spec.ops) {
    std::optional<UpdateOp> op;
    if (spec.weight_updates) {
      if (auto e = random_edge(true)) {
        const Weight old = *g.weight(e->first, e->second);
        Weight w = wt(rng);
        if (spec.mode == Mode::kIncremental) w = std::max(w, old);
        if (spec.mode == Mode::kDecremental) w = std::min(w, old);
        op = SetWeight{e->first, e->second, w};
      }
    } else {
      bool insert = spec.mode == Mode::kIncremental ||
                    (spec.mode == Mode::kFully && (g.edge_count() == 0 || rng() % 2 == 0));
      if (insert && g.edge_count() == max_edges) insert = false;
      if (insert) {
        if (auto e = random_edge(false)) op = InsertEdge{e->first, e->second, wt(rng)};
      } else if (spec.mode != Mode::kIncremental) {
        if (auto e = random_edge(true)) op = DeleteEdge{e->first, e->second};
      }
    }
    if (!op) break;
    g.apply(*op);
    t.ops.push_back(*op);
    if (t.ops.size() < spec.ops && ask(rng)) t.ops.push_back(Query{kind});
  }
  if (t.ops.empty() || !is_query(t.ops.back())) t.ops.push_back(Query{kind});
  return t;
}

}  // namespace dynpath
