// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynpath/bottleneck.hpp"
#include "dynpath/codec.hpp"
#include "dynpath/dominance.hpp"
#include "dynpath/harness.hpp"
#include "dynpath/kernels.hpp"
#include "oracles.hpp"

using namespace dynpath;
using boost::multiprecision::cpp_int;

namespace {

// Thrown by a criterion on its first failed check.
struct Failed {
  std::string what;
};

template <class... Parts>
void require(bool ok, const Parts&... parts) {
  if (ok) return;
  std::ostringstream s;
  (s << ... << parts);
  throw Failed{s.str()};
}

std::string show(const Answer& a) { return answer_to_json(a); }

// ---------------------------------------------------------------------------
// Brute-force answers by replaying a trace

Answer brute_answer(const DynamicGraph& g, const TraceHeader& h, QueryKind kind) {
  oracle::Dist d;
  switch (h.problem) {
    case Problem::kStsp:
    case Problem::kSssp:
      d = oracle::shortest(g, h.source);
      break;
    case Problem::kNwStsp:
    case Problem::kNwSssp:
      d = oracle::node_weighted(g, h.source);
      break;
    case Problem::kStbp:
    case Problem::kSsbp:
      d = oracle::bottleneck(g, h.source);
      break;
    case Problem::kStea:
    case Problem::kSsea:
      d = oracle::arrival(g, h.source);
      break;
    case Problem::kStReach: {
      auto r = oracle::reach(g, h.source);
      return Scalar(r[*h.target] ? 1 : 0);
    }
  }
  switch (kind) {
    case QueryKind::kSsspAll:
    case QueryKind::kSsbpAll:
    case QueryKind::kSseaAll:
      return d;
    default:
      return d[*h.target];
  }
}

std::vector<Answer> brute_results(const UpdateTrace& t) {
  DynamicGraph g = initial_graph(t.header);
  std::vector<Answer> res;
  for (const auto& op : t.ops) {
    if (const auto* q = std::get_if<Query>(&op)) {
      res.push_back(brute_answer(g, t.header, q->kind));
    } else {
      g.apply(op);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Independent clique enumeration over the raw pair tables

using Table = FourPartiteInstance::Table;

std::optional<Weight> clique_sum(const FourPartiteInstance& x, std::size_t a, std::size_t b,
                                 std::size_t c, std::size_t d) {
  const std::optional<Weight> w[6] = {x.pairs[0][a][b], x.pairs[1][b][c], x.pairs[2][c][a],
                                      x.pairs[3][a][d], x.pairs[4][b][d], x.pairs[5][c][d]};
  Weight s = 0;
  for (const auto& e : w) {
    if (!e) return std::nullopt;
    s += *e;
  }
  return s;
}

std::optional<Weight> lightest_through(const FourPartiteInstance& x, std::size_t a, std::size_t d) {
  std::optional<Weight> best;
  for (std::size_t b = 0; b < x.n; ++b) {
    for (std::size_t c = 0; c < x.n; ++c) {
      auto s = clique_sum(x, a, b, c, d);
      if (s && (!best || *s < *best)) best = s;
    }
  }
  return best;
}

std::optional<Weight> lightest(const FourPartiteInstance& x) {
  std::optional<Weight> best;
  for (std::size_t a = 0; a < x.n; ++a) {
    for (std::size_t d = 0; d < x.n; ++d) {
      auto s = lightest_through(x, a, d);
      if (s && (!best || *s < *best)) best = s;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// 1. Dynamic engines agree with brute-force recomputation

void dynamic_vs_static() {
  struct Config {
    const char* engine;
    Problem problem;
    Mode mode;
  };
  const std::vector<Config> configs = {
      {"ssea-dynamic", Problem::kSsea, Mode::kIncremental},
      {"ssea-dynamic", Problem::kSsea, Mode::kDecremental},
      {"stbp-threshold", Problem::kStbp, Mode::kIncremental},
      {"stbp-threshold", Problem::kStbp, Mode::kDecremental},
      {"ssbp-layered", Problem::kSsbp, Mode::kIncremental},
      {"ssbp-layered", Problem::kSsbp, Mode::kDecremental},
      {"ssbp-dyadic", Problem::kSsbp, Mode::kIncremental},
      {"nw-batched", Problem::kNwSssp, Mode::kIncremental},
      {"nw-batched", Problem::kNwStsp, Mode::kIncremental},
  };
  for (const auto& c : configs) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::mt19937_64 rng(seed * 7919 + static_cast<int>(c.problem));
      RandomTraceSpec s;
      s.problem = c.problem;
      s.mode = c.mode;
      s.n = std::uniform_int_distribution<std::size_t>(2, 32)(rng);
      s.ops = std::uniform_int_distribution<std::size_t>(10, 200)(rng);
      s.directed = seed % 2 == 0;
      s.max_weight = seed % 3 == 0 ? 4 : 40;
      auto t = random_trace(s, seed);
      auto e = make_engine(c.engine);
      const auto got = run_trace(*e, t).answers;
      const auto want = brute_results(t);
      require(got.size() == want.size(), c.engine, " seed ", seed, ": answer count");
      for (std::size_t q = 0; q < got.size(); ++q) {
        require(got[q] == want[q], c.engine, " ", to_string(c.problem), " ", to_string(c.mode),
                " seed ", seed, " query ", q, ": got ", show(got[q]), " want ", show(want[q]));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 2. Matrix kernels agree bit-exactly with naive loops

void kernels_vs_naive() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 16);
  const double rates[] = {0.0, 0.3, 0.7, 0.95, 1.0};
  for (int rep = 0; rep < 240; ++rep) {
    const std::size_t n = dim(rng), p = dim(rng), m = dim(rng);
    const double ra = rates[rep % 5], rb = rates[(rep / 5) % 5];
    const Weight hi = rep % 2 ? 6 : 1000;

    auto a = oracle::random_matrix(rng, n, p, hi, ra, kInf);
    auto b = oracle::random_matrix(rng, p, m, hi, rb, kNegInf);
    const auto dom = oracle::dominance(a, b);
    require(dominance_sparse(a, b) == dom, "dominance_sparse rep ", rep);
    DominanceDS ds(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = ds.row(i);
      for (std::size_t j = 0; j < m; ++j) require(r[j] == dom(i, j), "dominance row rep ", rep);
    }
    for (std::size_t j = 0; j < m; ++j) {
      auto col = ds.col(j);
      for (std::size_t i = 0; i < n; ++i) require(col[i] == dom(i, j), "dominance col rep ", rep);
    }

    auto x = oracle::random_matrix(rng, n, p, hi, ra, kNegInf);
    auto y = oracle::random_matrix(rng, p, m, hi, rb, kNegInf);
    if (rep % 7 == 0) x(0, 0) = kInf;
    if (rep % 11 == 0) y(0, 0) = kInf;
    const auto mm = oracle::maxmin(x, y);
    require(maxmin_product(x, y) == mm, "maxmin_product rep ", rep);
    const double bexp = MaxMinDS::exponent_b(x);
    for (double g : {0.0, bexp / 2, bexp}) {
      MaxMinDS md(x, y, g);
      for (std::size_t i = 0; i < n; ++i) {
        auto r = md.row(i);
        for (std::size_t j = 0; j < m; ++j) require(r[j] == mm(i, j), "maxmin row rep ", rep, " g ", g);
      }
      for (std::size_t j = 0; j < m; ++j) {
        auto col = md.col(j);
        for (std::size_t i = 0; i < n; ++i) require(col[i] == mm(i, j), "maxmin col rep ", rep, " g ", g);
      }
    }

    const double density = 1.0 - ra;
    auto ba = oracle::random_bits(rng, n, p, density);
    auto bb = oracle::random_bits(rng, p, m, 1.0 - rb);
    auto mw = min_witness(ba, bb);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        std::int32_t want = kNoWitness;
        for (std::size_t k = 0; k < p && want == kNoWitness; ++k) {
          if (ba.get(i, k) && bb.get(k, j)) want = static_cast<std::int32_t>(k);
        }
        require(mw(i, j) == want, "min_witness rep ", rep);
      }
    }

    auto c1 = oracle::random_bits(rng, n, p, density);
    auto c2 = oracle::random_bits(rng, m, p, 1.0 - rb);
    auto c3 = oracle::random_bits(rng, std::min<std::size_t>(n, 8), p, 0.5);
    auto w3 = min_witness3(c1, c2, c3);
    for (std::size_t u = 0; u < c1.rows(); ++u) {
      for (std::size_t v = 0; v < c2.rows(); ++v) {
        for (std::size_t z = 0; z < c3.rows(); ++z) {
          std::int32_t want = kNoWitness;
          for (std::size_t j = 0; j < p && want == kNoWitness; ++j) {
            if (c1.get(u, j) && c2.get(v, j) && c3.get(z, j)) want = static_cast<std::int32_t>(j);
          }
          require(w3.at(u, v, z) == want, "min_witness3 rep ", rep);
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 3. Minimum-weight 4-clique through st shortest paths

void mw4c_end_to_end() {
  for (Mode mode : {Mode::kIncremental, Mode::kDecremental}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto inst = random_four_partite(5, 0.6, 20, seed);
      inst.complete();
      auto b = gen_mw4c_to_stsp(inst, mode);
      auto e = make_engine("recompute");
      const Json got = decode(b, run_trace(*e, b.trace));
      const auto want = lightest(inst);
      require(want.has_value(), "completed instance has no clique, seed ", seed);
      require(got == Json(*want), to_string(mode), " seed ", seed, ": decoded ", got.dump(),
              " want ", *want);
      require(oracle_min_weight_4clique(inst) == want, "library oracle disagrees, seed ", seed);
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Per-query threshold behaviour of the clique reductions at n = 4

void clique_lemmas() {
  using Gen = ReductionBundle (*)(const FourPartiteInstance&, Mode);
  const std::vector<std::pair<const char*, Gen>> gens = {
      {"4c-nwstsp", gen_4c_to_nwstsp}, {"4c-stbp", gen_4c_to_stbp}, {"4c-stea", gen_4c_to_stea}};
  for (Mode mode : {Mode::kIncremental, Mode::kDecremental}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      auto raw = random_four_partite(4, 0.35 + 0.02 * static_cast<double>(seed % 10), 20, seed);
      for (const auto& [name, gen] : gens) {
        auto b = gen(raw, mode);
        auto r = run_trace(*make_engine("recompute"), b.trace);
        for (const auto& c : b.checks) {
          const bool exists = lightest_through(raw, c.k, c.i).has_value();
          const bool passed = decode_query(b, c, r.answers[c.query])[0].has_value();
          require(exists == passed, name, " ", to_string(mode), " seed ", seed, " (d=", c.i,
                  ", a=", c.k, "): clique ", exists, " threshold ", passed);
        }
      }
      auto done = raw;
      done.complete();
      auto b = gen_mw4c_to_stsp(done, mode);
      auto r = run_trace(*make_engine("recompute"), b.trace);
      for (const auto& c : b.checks) {
        const auto want = lightest_through(done, c.k, c.i);
        const auto got = decode_query(b, c, r.answers[c.query])[0];
        require(got == want, "mw4c ", to_string(mode), " seed ", seed, " (d=", c.i, ", a=", c.k,
                "): decoded ", got.value_or(-1), " want ", want.value_or(-1));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 5. Matrix-problem reductions decode to independently computed answers

Json omv3_truth(const OMv3Instance& x) {
  Json out = Json::array();
  for (const auto& q : x.queries) {
    bool hit = false;
    for (std::size_t k = 0; k < x.n; ++k) {
      for (std::size_t j = 0; j < x.n; ++j) {
        for (std::size_t l = 0; l < x.n; ++l) {
          hit = hit || (q.u[k] && q.v[j] && q.w[l] && x.a[k][j] && x.a[j][l] && x.a[l][k]);
        }
      }
    }
    out.push_back(hit);
  }
  return out;
}

Json mw3_truth(const MinWitness3Instance& x) {
  Json out = Json::array();
  for (std::size_t k = 0; k < x.n; ++k) {
    Json plane = Json::array();
    for (std::size_t l = 0; l < x.n; ++l) {
      Json line = Json::array();
      for (std::size_t i = 0; i < x.n; ++i) {
        Json v = nullptr;
        for (std::size_t j = x.n; j-- > 0;) {
          if (x.a[k][j] && x.c[l][j] && x.d[i][j]) v = j;
        }
        line.push_back(v);
      }
      plane.push_back(line);
    }
    out.push_back(plane);
  }
  return out;
}

Json mw_truth(const MinWitnessInstance& x) {
  Json out = Json::array();
  for (std::size_t i = 0; i < x.n; ++i) {
    Json line = Json::array();
    for (std::size_t j = 0; j < x.n; ++j) {
      Json v = nullptr;
      for (std::size_t k = x.n; k-- > 0;) {
        if (x.a[i][k] && x.b[k][j]) v = k;
      }
      line.push_back(v);
    }
    out.push_back(line);
  }
  return out;
}

void matrix_reductions() {
  auto check = [](const ReductionBundle& b, const Json& want, std::uint64_t seed) {
    const Json got = decode(b, run_trace(*make_engine("recompute"), b.trace));
    require(got == want, b.reduction, " ", to_string(b.mode), " seed ", seed, ": decoded ",
            got.dump(), " want ", want.dump());
  };
  for (Mode mode : {Mode::kIncremental, Mode::kDecremental}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const std::size_t n = 1 + seed % 6;
      auto o = random_omv3(n, n, 0.3 + 0.05 * static_cast<double>(seed % 8), seed);
      const Json truth = omv3_truth(o);
      check(gen_omv3_to_stbp(o, mode), truth, seed);
      check(gen_omv3_to_nwstsp(o, mode), truth, seed);
      check(gen_omv3_to_stea(o, mode), truth, seed);

      auto w3 = random_min_witness3(n, 0.4, seed);
      check(gen_mw3p_to_nwsssp(w3, mode), mw3_truth(w3), seed);

      auto w = random_min_witness(1 + seed % 8, 0.3, seed);
      check(gen_mw_to_ssbp(w, mode), mw_truth(w), seed);
    }
  }
}

// ---------------------------------------------------------------------------
// 6. Structural counters

std::size_t edges_ever(const UpdateTrace& t) {
  std::size_t m = t.header.initial_edges.size();
  for (const auto& op : t.ops) m += std::holds_alternative<InsertEdge>(op);
  return m;
}

void structural_counters() {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Mode mode : {Mode::kIncremental, Mode::kDecremental}) {
      RandomTraceSpec s;
      s.problem = Problem::kStbp;
      s.mode = mode;
      s.n = 4 + seed % 28;
      s.ops = 200;
      s.directed = seed % 2 == 0;
      auto t = random_trace(s, seed);
      auto thr = make_engine("stbp-threshold");
      run_trace(*thr, t);
      const auto ops = thr->counters().at("reach_ops");
      require(ops <= 2 * edges_ever(t), "stbp-threshold reach_ops ", ops, " > 2m, seed ", seed);

      s.problem = Problem::kSsbp;
      auto u = random_trace(s, seed);
      auto lay = make_engine("ssbp-layered");
      run_trace(*lay, u);
      const auto c = lay->counters();
      const double universe = static_cast<double>(std::max<std::uint64_t>(c.at("universe"), 1));
      const auto bound = static_cast<std::uint64_t>(std::ceil(std::log2(universe))) + 1;
      require(c.at("max_probes") <= bound, "ssbp-layered probes ", c.at("max_probes"), " > ", bound);
    }

    RandomTraceSpec r;
    r.problem = Problem::kStReach;
    r.n = 4 + seed % 28;
    r.ops = 200;
    r.directed = seed % 2 == 0;
    auto t = random_trace(r, seed);
    auto reach = make_engine("reach-dynamic");
    run_trace(*reach, t);
    const auto rc = reach->counters();
    require(rc.at("edges_scanned") <= 2 * (rc.at("arcs") + t.header.n),
            "reach-dynamic scanned ", rc.at("edges_scanned"), " seed ", seed);

    for (Mode mode : {Mode::kIncremental, Mode::kDecremental}) {
      const std::size_t n = 2 + seed % 5;
      for (const char* name : {"4c-stea", "omv3-stea"}) {
        auto b = generate_random_bundle(name, n, mode, seed);
        const Json k = audit_counters(b);
        const auto bound = 16 * b.params.at("n").get<std::uint64_t>();
        require(k.at("max_round_updates").get<std::uint64_t>() <= bound, name, " round updates ",
                k.at("max_round_updates").dump(), " > 16n");
        if (k.at("activations").get<std::uint64_t>() > 0) {
          require(k.at("max_activations_per_edge_per_pass") == 1 &&
                      k.at("min_activations_per_edge_per_pass") == 1,
                  name, " activations per edge per pass not exactly one, seed ", seed);
          // The only other change to an activated edge is its retirement.
          require(k.at("max_changes_per_edge_per_pass") == 2, name, " edge changed ",
                  k.at("max_changes_per_edge_per_pass").dump(), " times in a pass, seed ", seed);
        }
      }
      auto w = generate_random_bundle("mw-ssbp", n, mode, seed);
      require(w.trace.update_count() == n, "mw-ssbp updates ", w.trace.update_count(), " != n");
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Path-weight codec and list labelling

cpp_int evaluate(const std::vector<std::uint32_t>& counts, std::uint64_t base) {
  cpp_int v = 0;
  for (std::uint32_t c : counts) v = v * base + c;
  return v;
}

std::vector<UpdateOp> random_updates(std::mt19937_64& rng, std::size_t n, bool directed,
                                     std::size_t count) {
  DynamicGraph g(n, directed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<Weight> wt(-30, 100);
  std::vector<UpdateOp> ops;
  while (ops.size() < count) {
    const Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    const Weight w = wt(rng);
    UpdateOp op = InsertEdge{u, v, w};
    if (g.has_edge(u, v)) op = rng() % 2 ? UpdateOp(DeleteEdge{u, v}) : UpdateOp(SetWeight{u, v, w});
    g.apply(op);
    ops.push_back(op);
  }
  return ops;
}

void codec_checks() {
  std::mt19937_64 rng(77);
  for (int pair = 0; pair < 10000; ++pair) {
    const std::size_t n = 1 + pair % 8;
    PathWeightCodec c(n);
    auto path = [&] {
      std::uniform_int_distribution<std::size_t> len(0, n), lo(1, c.range()), span(0, 3);
      const std::size_t a = lo(rng), b = std::min(c.range(), a + span(rng));
      std::uniform_int_distribution<std::size_t> label(a, b);
      std::vector<std::size_t> p(len(rng));
      for (auto& l : p) l = label(rng);
      return p;
    };
    auto build = [&](const std::vector<std::size_t>& p) {
      auto h = c.empty();
      for (auto l : p) h = c.concat_edge(h, l);
      return h;
    };
    auto pa = path();
    auto pb = pair % 3 == 0 ? pa : path();
    if (pair % 3 == 0) std::shuffle(pb.begin(), pb.end(), rng);
    const auto ha = build(pa), hb = build(pb);
    const cpp_int va = evaluate(c.counts(ha), n + 1), vb = evaluate(c.counts(hb), n + 1);
    const Order want = va < vb ? Order::kLess : (va == vb ? Order::kEqual : Order::kGreater);
    require(c.compare(ha, hb) == want, "compare disagrees with big-integer value, pair ", pair);
  }

  for (std::size_t n = 1; n <= 16; ++n) {
    PathWeightCodec c(n);
    const auto bound = static_cast<std::size_t>(std::ceil(std::log2(2.0 * n * n))) + 1;
    std::uniform_int_distribution<std::size_t> label(1, c.range());
    auto h = c.empty();
    for (int step = 0; step < 200; ++step) {
      h = c.concat_edge(step % 17 == 0 ? c.empty() : h, label(rng));
      require(c.last_allocated() <= bound, "concat allocated ", c.last_allocated(), " > ", bound);
    }
  }

  ListLabeller l;
  std::set<Weight> shadow;
  std::uniform_int_distribution<Weight> item(0, 3000);
  const std::size_t t = 10000;
  for (std::size_t op = 1; op <= t; ++op) {
    const Weight x = item(rng);
    if (shadow.count(x) && rng() % 3 == 0) {
      l.erase(x);
      shadow.erase(x);
    } else if (!shadow.count(x)) {
      l.insert(x);
      shadow.insert(x);
    } else {
      continue;
    }
    if (op % 97 == 0 || op == t) {
      require(l.items() == std::vector<Weight>(shadow.begin(), shadow.end()), "labeller order, op ", op);
      std::size_t prev = 0;
      for (Weight y : shadow) {
        require(l.label(y) > prev, "labels not increasing at op ", op);
        prev = l.label(y);
      }
    }
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(op, 2)));
    require(static_cast<double>(l.moves()) <= ListLabeller::kMoveConstant * op * lg * lg,
            "labeller moves ", l.moves(), " after ", op, " ops");
  }

  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 10;
    const bool directed = rep % 2 == 0;
    auto ops = random_updates(rng, n, directed, 30);
    auto snaps = fd_apbp_reference(n, directed, {}, ops);
    require(snaps.size() == ops.size(), "fd_apbp snapshot count");
    DynamicGraph g(n, directed);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      g.apply(ops[i]);
      require(snaps[i].b == static_apbp(g), "fd_apbp rep ", rep, " update ", i, " vs static_apbp");
      for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
        require(snaps[i].b[s] == oracle::bottleneck(g, s), "fd_apbp rep ", rep, " update ", i,
                " source ", s);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 8. Padding with isolated vertices changes nothing

void sparsification() {
  const auto& names = reduction_names();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::string& name = names[seed % names.size()];
    const Mode mode = seed % 2 ? Mode::kDecremental : Mode::kIncremental;
    auto b = generate_random_bundle(name, 2 + seed % 3, mode, seed);
    auto padded = b;
    padded.trace = sparsify_trace(b.trace, 4 * b.trace.header.n);
    auto e1 = make_engine("recompute");
    auto e2 = make_engine("recompute");
    const auto r1 = verify_bundle(b, *e1), r2 = verify_bundle(padded, *e2);
    require(r1.pass && r2.pass, name, " seed ", seed, ": bundle does not verify");
    require(r1.decoded == r2.decoded && r1.counters == r2.counters &&
                r1.first_mismatch == r2.first_mismatch,
            name, " seed ", seed, ": padded report differs");
  }
  const Problem problems[] = {Problem::kSssp,  Problem::kNwSssp, Problem::kSsbp,   Problem::kSsea,
                              Problem::kStsp,  Problem::kStbp,   Problem::kStReach};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomTraceSpec s;
    s.problem = problems[seed % 7];
    s.mode = seed % 3 == 0 ? Mode::kDecremental : Mode::kIncremental;
    s.n = 3 + seed % 10;
    s.ops = 80;
    auto t = random_trace(s, seed);
    auto p = sparsify_trace(t, 4 * t.header.n);
    const auto a = recompute_results(t).answers, b = recompute_results(p).answers;
    require(a.size() == b.size(), "padded trace answer count, seed ", seed);
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (const auto* x = std::get_if<Scalar>(&a[q])) {
        require(*x == std::get<Scalar>(b[q]), "padded scalar answer, seed ", seed);
        continue;
      }
      const auto& x = std::get<std::vector<Scalar>>(a[q]);
      const auto& y = std::get<std::vector<Scalar>>(b[q]);
      require(y.size() == 4 * x.size(), "padded array size, seed ", seed);
      for (std::size_t v = 0; v < y.size(); ++v) {
        require(y[v] == (v < x.size() ? x[v] : std::nullopt), "padded array answer, seed ", seed);
      }
    }
  }
}

struct Criterion {
  const char* name;
  std::function<void()> run;
  double budget_s;  // 0: no time limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"dynamic engines match brute-force recomputation", dynamic_vs_static, 60},
      {"matrix kernels match naive loops bit-exactly", kernels_vs_naive, 30},
      {"min-weight 4-clique decodes from st shortest paths", mw4c_end_to_end, 120},
      {"clique reductions pass thresholds exactly on cliques", clique_lemmas, 0},
      {"OMv3 and min-witness reductions decode to the truth", matrix_reductions, 0},
      {"structural counters within bounds", structural_counters, 0},
      {"path-weight codec, list labelling and APBP reference", codec_checks, 0},
      {"isolated-vertex padding leaves answers unchanged", sparsification, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      c.run();
    } catch (const Failed& f) {
      why = f.what;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && c.budget_s > 0 && secs >= c.budget_s) {
      why = "took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_s) + " s";
    }
    std::ostringstream line;
    line << (why.empty() ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name;
    line.precision(2);
    line << std::fixed << " (" << secs << " s)";
    if (!why.empty()) line << ": " << why;
    std::cout << line.str() << std::endl;
    failed += !why.empty();
  }
  return failed ? 1 : 0;
}
