#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dynpath/harness.hpp"

namespace dynpath {

namespace {

std::string show(const std::optional<Weight>& w) { return w ? std::to_string(*w) : "null"; }

std::string show(const std::vector<std::optional<Weight>>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + show(v[i]);
  return s + "]";
}

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

bool is_arrival(const ReductionBundle& b) { return b.trace.header.problem == Problem::kStea; }

// Activation: a weight set to a query level, i.e. 10p + {2, 4, 6, 8}.
bool is_activation(Weight w) {
  const Weight r = w % 10;
  return w >= 0 && r != 0 && r % 2 == 0;
}

Json check_json(const QueryCheck& c) {
  Json expect = Json::array();
  for (const auto& e : c.expect) expect.push_back(e ? Json(*e) : Json(nullptr));
  return {{"query", c.query},         {"i", c.i},       {"k", c.k},
          {"threshold", c.threshold}, {"base", c.base}, {"targets", c.targets},
          {"expect", expect}};
}

QueryCheck check_from_json(const Json& j) {
  QueryCheck c;
  c.query = j.at("query").get<std::size_t>();
  c.i = j.at("i").get<std::int64_t>();
  c.k = j.at("k").get<std::int64_t>();
  c.threshold = j.at("threshold").get<Weight>();
  c.base = j.at("base").get<Weight>();
  c.targets = j.at("targets").get<std::vector<Vertex>>();
  for (const auto& e : j.at("expect")) {
    c.expect.push_back(e.is_null() ? std::nullopt : std::optional<Weight>(e.get<Weight>()));
  }
  return c;
}

}  // namespace

std::vector<std::optional<Weight>> decode_query(const ReductionBundle& b, const QueryCheck& c,
                                                const Answer& a) {
  std::vector<Scalar> values;
  if (c.targets.empty()) {
    const auto* s = std::get_if<Scalar>(&a);
    if (!s) throw BadParameter("expected a scalar answer");
    values.push_back(*s);
  } else {
    const auto* arr = std::get_if<std::vector<Scalar>>(&a);
    if (!arr) throw BadParameter("expected an array answer");
    for (Vertex t : c.targets) {
      if (t < 0 || static_cast<std::size_t>(t) >= arr->size()) throw BadParameter("target outside answer");
      values.push_back((*arr)[t]);
    }
  }
  const std::string& r = b.reduction;
  std::vector<std::optional<Weight>> out;
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const auto& v = values[idx];
    std::optional<Weight> d;
    if (r == "mw4c-stsp") {
      if (v && *v < c.threshold) d = (*v - c.base) / b.params.at("scale").get<Weight>();
    } else if (r == "4c-nwstsp" || r == "omv3-nwstsp") {
      if (v && *v < c.threshold) d = *v - c.base;
    } else if (r == "mw3p-nwsssp") {
      if (v && *v < c.threshold) {
        d = (*v - c.base - static_cast<Weight>(idx)) / b.params.at("W").get<Weight>();
      }
    } else if (r == "mw-ssbp") {
      if (v && *v >= c.threshold) d = c.base - *v;
    } else if (r == "4c-stea" || r == "omv3-stea") {
      if (v && *v == c.threshold) d = *v;
    } else if (r == "4c-stbp" || r == "omv3-stbp") {
      if (v && *v >= c.threshold) d = *v;
    } else {
      throw BadParameter("unknown reduction: " + r);
    }
    out.push_back(d);
  }
  return out;
}

Json decode(const ReductionBundle& b, const TraceResult& res) {
  if (res.answers.size() != b.checks.size()) {
    throw BadParameter("result has " + std::to_string(res.answers.size()) + " answers, bundle has " +
                       std::to_string(b.checks.size()) + " queries");
  }
  const std::string& r = b.reduction;
  const std::size_t n = b.params.at("n").get<std::size_t>();
  std::vector<std::vector<std::optional<Weight>>> got;
  for (const auto& c : b.checks) got.push_back(decode_query(b, c, res.answers[c.query]));

  if (r == "mw4c-stsp") {
    std::optional<Weight> best;
    for (const auto& g : got) {
      if (g[0] && (!best || *g[0] < *best)) best = g[0];
    }
    return best ? Json(*best) : Json(nullptr);
  }
  if (starts_with(r, "4c-")) {
    return std::any_of(got.begin(), got.end(), [](const auto& g) { return g[0].has_value(); });
  }
  if (starts_with(r, "omv3-")) {
    std::vector<bool> ans(b.params.at("queries").get<std::size_t>(), false);
    for (std::size_t q = 0; q < got.size(); ++q) {
      if (got[q][0]) ans.at(static_cast<std::size_t>(b.checks[q].i)) = true;
    }
    Json j = Json::array();
    for (bool x : ans) j.push_back(x);
    return j;
  }
  if (r == "mw3p-nwsssp") {
    Json t = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
      Json plane = Json::array();
      for (std::size_t l = 0; l < n; ++l) plane.push_back(Json(std::vector<std::nullptr_t>(n, nullptr)));
      t.push_back(plane);
    }
    for (std::size_t q = 0; q < got.size(); ++q) {
      const auto& c = b.checks[q];
      for (std::size_t l = 0; l < n; ++l) {
        if (got[q][l]) t[c.k][l][c.i] = *got[q][l];
      }
    }
    return t;
  }
  if (r == "mw-ssbp") {
    Json t = Json::array();
    for (std::size_t i = 0; i < n; ++i) t.push_back(Json(std::vector<std::nullptr_t>(n, nullptr)));
    for (std::size_t q = 0; q < got.size(); ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        if (got[q][j]) t[b.checks[q].i][j] = *got[q][j];
      }
    }
    return t;
  }
  throw BadParameter("unknown reduction: " + r);
}

Json audit_counters(const ReductionBundle& b) {
  const auto& ops = b.trace.ops;
  Json c;
  c["updates"] = b.trace.update_count();
  c["queries"] = b.trace.query_count();
  c["rounds"] = b.rounds.size();
  std::size_t max_round = 0;
  for (const auto& r : b.rounds) {
    std::size_t u = 0;
    for (std::size_t p = r.begin; p < r.end; ++p) u += is_query(ops[p]) ? 0 : 1;
    max_round = std::max(max_round, u);
  }
  c["max_round_updates"] = max_round;
  if (!is_arrival(b)) return c;

  // Per pass and edge: weight changes and activations inside rounds.
  std::map<std::int64_t, std::map<std::pair<Vertex, Vertex>, std::pair<int, int>>> per_pass;
  std::vector<bool> in_round(ops.size(), false);
  std::uint64_t activations = 0;
  for (const auto& r : b.rounds) {
    auto& edges = per_pass[r.pass];
    for (std::size_t p = r.begin; p < r.end; ++p) {
      in_round[p] = true;
      const auto* s = std::get_if<SetWeight>(&ops[p]);
      if (!s) continue;
      auto& e = edges[{s->u, s->v}];
      ++e.first;
      if (is_activation(s->w)) {
        ++e.second;
        ++activations;
      }
    }
  }
  int max_changes = 0, max_act = 0, min_act = 0;
  bool first = true;
  for (const auto& [pass, edges] : per_pass) {
    for (const auto& [edge, cnt] : edges) {
      max_changes = std::max(max_changes, cnt.first);
      max_act = std::max(max_act, cnt.second);
      min_act = first ? cnt.second : std::min(min_act, cnt.second);
      first = false;
    }
  }
  std::size_t shift = 0;
  for (std::size_t p = 0; p < ops.size(); ++p) shift += !in_round[p] && !is_query(ops[p]) ? 1 : 0;
  c["activations"] = activations;
  c["max_changes_per_edge_per_pass"] = max_changes;
  c["max_activations_per_edge_per_pass"] = max_act;
  c["min_activations_per_edge_per_pass"] = min_act;
  c["shift_updates"] = shift;
  return c;
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  out << (pass ? "PASS" : "FAIL") << "\n";
  if (first_mismatch) out << "first mismatching query: " << *first_mismatch << "\n";
  for (const auto& f : failures) out << "  " << f << "\n";
  out << "decoded: " << decoded.dump() << "\n";
  out << "counters: " << counters.dump() << "\n";
  out << "engine counters: " << engine_counters.dump() << "\n";
  return out.str();
}

Json VerifyReport::summary() const {
  return {{"pass", pass},
          {"first_mismatch", first_mismatch ? Json(*first_mismatch) : Json(nullptr)},
          {"failures", failures},
          {"decoded", decoded},
          {"counters", counters},
          {"engine_counters", engine_counters}};
}

VerifyReport verify_bundle(const ReductionBundle& b, Engine& engine) {
  VerifyReport rep;
  rep.counters = audit_counters(b);
  try {
    validate(b.trace);
  } catch (const InvariantViolation& e) {
    rep.failures.push_back(std::string("flag audit: ") + e.what());
    return rep;
  }
  const TraceResult res = run_trace(engine, b.trace);
  for (const auto& [k, v] : engine.counters()) rep.engine_counters[k] = v;
  if (res.answers.size() != b.checks.size()) {
    rep.failures.push_back("answer count " + std::to_string(res.answers.size()) + " != " +
                           std::to_string(b.checks.size()));
    return rep;
  }
  constexpr std::size_t kMaxListed = 10;
  std::size_t mismatches = 0;
  for (const auto& c : b.checks) {
    const auto got = decode_query(b, c, res.answers[c.query]);
    if (got == c.expect) continue;
    if (!rep.first_mismatch) rep.first_mismatch = c.query;
    if (++mismatches <= kMaxListed) {
      rep.failures.push_back("query " + std::to_string(c.query) + " (i=" + std::to_string(c.i) +
                             ", k=" + std::to_string(c.k) + "): expected " + show(c.expect) +
                             ", decoded " + show(got));
    }
  }
  if (mismatches > kMaxListed) {
    rep.failures.push_back(std::to_string(mismatches - kMaxListed) + " further query mismatches");
  }
  rep.decoded = decode(b, res);
  if (rep.decoded != b.oracle) {
    rep.failures.push_back("decoded answer " + rep.decoded.dump() + " differs from oracle " + b.oracle.dump());
  }
  const std::size_t n = b.params.at("n").get<std::size_t>();
  if (is_arrival(b)) {
    const auto& ct = rep.counters;
    if (ct["activations"].get<std::uint64_t>() > 0 &&
        (ct["max_activations_per_edge_per_pass"].get<int>() != 1 ||
         ct["min_activations_per_edge_per_pass"].get<int>() != 1)) {
      rep.failures.push_back("an edge was activated other than once in a pass");
    }
    if (ct["max_round_updates"].get<std::size_t>() > 16 * n) {
      rep.failures.push_back("more than 16n weight changes in one round");
    }
  }
  if (b.reduction == "mw-ssbp" && rep.counters["updates"].get<std::size_t>() != n) {
    rep.failures.push_back("min-witness bundle does not have exactly n updates");
  }
  rep.pass = rep.failures.empty();
  return rep;
}

void save_bundle(const ReductionBundle& b, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  save_trace_file(b.trace, (fs::path(dir) / "trace.jsonl").string());
  Json checks = Json::array();
  for (const auto& c : b.checks) checks.push_back(check_json(c));
  Json rounds = Json::array();
  for (const auto& r : b.rounds) {
    rounds.push_back({{"begin", r.begin}, {"end", r.end}, {"pass", r.pass}, {"retire", r.retire}});
  }
  Json j{{"reduction", b.reduction}, {"mode", to_string(b.mode)},  {"params", b.params},
         {"oracle", b.oracle},       {"checks", checks},            {"rounds", rounds},
         {"counters", audit_counters(b)}};
  std::ofstream out(fs::path(dir) / "expected.json");
  if (!out) throw Error("cannot write " + dir + "/expected.json");
  out << j.dump(1) << "\n";
}

ReductionBundle load_bundle(const std::string& dir) {
  namespace fs = std::filesystem;
  ReductionBundle b;
  b.trace = load_trace_file((fs::path(dir) / "trace.jsonl").string());
  std::ifstream in(fs::path(dir) / "expected.json");
  if (!in) throw Error("cannot read " + dir + "/expected.json");
  try {
    const Json j = Json::parse(in);
    b.reduction = j.at("reduction").get<std::string>();
    const auto mode = mode_from_string(j.at("mode").get<std::string>());
    if (!mode) throw BadParameter("bad mode in expected.json");
    b.mode = *mode;
    b.params = j.at("params");
    b.oracle = j.at("oracle");
    for (const auto& c : j.at("checks")) b.checks.push_back(check_from_json(c));
    for (const auto& r : j.at("rounds")) {
      b.rounds.push_back({r.at("begin").get<std::size_t>(), r.at("end").get<std::size_t>(),
                          r.at("pass").get<std::int64_t>(), r.at("retire").get<Weight>()});
    }
  } catch (const Json::exception& e) {
    throw BadParameter(std::string("expected.json: ") + e.what());
  }
  if (b.checks.size() != b.trace.query_count()) throw BadParameter("checks do not match trace queries");
  return b;
}

}  // namespace dynpath
