#include "dynpath/trace.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace dynpath {

using nlohmann::json;

namespace {

constexpr std::pair<Problem, const char*> kProblemNames[] = {
    {Problem::kStsp, "stsp"},       {Problem::kSssp, "sssp"},   {Problem::kNwStsp, "nw_stsp"},
    {Problem::kNwSssp, "nw_sssp"},  {Problem::kStbp, "stbp"},   {Problem::kSsbp, "ssbp"},
    {Problem::kStea, "stea"},       {Problem::kSsea, "ssea"},   {Problem::kStReach, "st_reach"},
};

json op_to_json(const UpdateOp& op) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, InsertEdge>) {
          return {{"op", "insert"}, {"u", o.u}, {"v", o.v}, {"w", o.w}};
        } else if constexpr (std::is_same_v<T, DeleteEdge>) {
          return {{"op", "delete"}, {"u", o.u}, {"v", o.v}};
        } else if constexpr (std::is_same_v<T, SetWeight>) {
          return {{"op", "setw"}, {"u", o.u}, {"v", o.v}, {"w", o.w}};
        } else {
          return {{"op", "query"}, {"kind", to_string(o.kind)}};
        }
      },
      op);
}

template <typename T>
T field(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(line, std::string("missing field '") + key + "'");
  try {
    return it->template get<T>();
  } catch (const json::exception& e) {
    throw ParseError(line, std::string("bad field '") + key + "': " + e.what());
  }
}

UpdateOp op_from_json(const json& j, std::size_t line) {
  if (!j.is_object()) throw ParseError(line, "op is not an object");
  auto kind = field<std::string>(j, "op", line);
  if (kind == "insert") {
    return InsertEdge{field<Vertex>(j, "u", line), field<Vertex>(j, "v", line),
                      field<Weight>(j, "w", line)};
  }
  if (kind == "delete") {
    return DeleteEdge{field<Vertex>(j, "u", line), field<Vertex>(j, "v", line)};
  }
  if (kind == "setw") {
    return SetWeight{field<Vertex>(j, "u", line), field<Vertex>(j, "v", line),
                     field<Weight>(j, "w", line)};
  }
  if (kind == "query") {
    auto q = query_kind_from_string(field<std::string>(j, "kind", line));
    if (!q) throw ParseError(line, "unknown query kind");
    return Query{*q};
  }
  throw ParseError(line, "unknown op '" + kind + "'");
}

json header_to_json(const TraceHeader& h) {
  json j = {{"n", h.n},
            {"directed", h.directed},
            {"problem", to_string(h.problem)},
            {"source", h.source},
            {"mode", to_string(h.mode)}};
  if (h.target) j["target"] = *h.target;
  if (!h.node_weights.empty()) j["node_weights"] = h.node_weights;
  if (!h.initial_edges.empty()) {
    json edges = json::array();
    for (const auto& e : h.initial_edges) edges.push_back({e.u, e.v, e.w});
    j["edges"] = std::move(edges);
  }
  return j;
}

TraceHeader header_from_json(const json& j, std::size_t line) {
  TraceHeader h;
  h.n = field<std::size_t>(j, "n", line);
  h.directed = field<bool>(j, "directed", line);
  auto p = problem_from_string(field<std::string>(j, "problem", line));
  if (!p) throw ParseError(line, "unknown problem");
  h.problem = *p;
  h.source = field<Vertex>(j, "source", line);
  if (j.contains("target") && !j["target"].is_null()) h.target = field<Vertex>(j, "target", line);
  auto m = mode_from_string(field<std::string>(j, "mode", line));
  if (!m) throw ParseError(line, "unknown mode");
  h.mode = *m;
  if (j.contains("node_weights")) h.node_weights = field<std::vector<Weight>>(j, "node_weights", line);
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3) throw ParseError(line, "edge must be [u,v,w]");
      h.initial_edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<Weight>()});
    }
  }
  return h;
}

json answer_json(const Answer& a) {
  auto scalar = [](const Scalar& s) -> json { return s ? json(*s) : json(nullptr); };
  if (const auto* s = std::get_if<Scalar>(&a)) return scalar(*s);
  json arr = json::array();
  for (const auto& s : std::get<std::vector<Scalar>>(a)) arr.push_back(scalar(s));
  return arr;
}

Scalar scalar_from_json(const json& j, std::size_t line) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number_integer()) throw ParseError(line, "answer must be an integer or null");
  return j.get<Weight>();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace

std::string to_string(Problem p) {
  for (const auto& [k, name] : kProblemNames) {
    if (k == p) return name;
  }
  return "?";
}

std::optional<Problem> problem_from_string(const std::string& s) {
  for (const auto& [k, name] : kProblemNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

std::size_t UpdateTrace::update_count() const {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [](const UpdateOp& o) { return !is_query(o); }));
}

std::size_t UpdateTrace::query_count() const { return ops.size() - update_count(); }

bool query_matches_problem(QueryKind k, Problem p) {
  switch (p) {
    case Problem::kStsp:
    case Problem::kSssp:
    case Problem::kNwStsp:
    case Problem::kNwSssp:
      return k == QueryKind::kStDist || k == QueryKind::kSsspAll;
    case Problem::kStbp:
    case Problem::kSsbp:
      return k == QueryKind::kStBottleneck || k == QueryKind::kSsbpAll;
    case Problem::kStea:
    case Problem::kSsea:
      return k == QueryKind::kStArrival || k == QueryKind::kSseaAll;
    case Problem::kStReach:
      return k == QueryKind::kStReach;
  }
  return false;
}

DynamicGraph initial_graph(const TraceHeader& h) {
  DynamicGraph g(h.n, h.directed, Mode::kFully);
  for (const auto& e : h.initial_edges) g.insert_edge(e.u, e.v, e.w);
  g.set_node_weights(h.node_weights);
  g.set_mode(h.mode);
  return g;
}

void validate(const UpdateTrace& t) {
  const auto& h = t.header;
  auto in_range = [&](Vertex v) { return v >= 0 && static_cast<std::size_t>(v) < h.n; };
  if (!in_range(h.source)) throw InvariantViolation(0, "source out of range");
  if (h.target && !in_range(*h.target)) throw InvariantViolation(0, "target out of range");
  if (!h.node_weights.empty() && h.node_weights.size() != h.n) {
    throw InvariantViolation(0, "node_weights length differs from n");
  }
  DynamicGraph g(h.n, h.directed, Mode::kFully);
  try {
    for (const auto& e : h.initial_edges) g.insert_edge(e.u, e.v, e.w);
  } catch (const Error& e) {
    throw InvariantViolation(0, std::string("initial edges: ") + e.what());
  }
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    const auto& op = t.ops[i];
    if (const auto* q = std::get_if<Query>(&op)) {
      bool needs_target = q->kind == QueryKind::kStDist || q->kind == QueryKind::kStBottleneck ||
                          q->kind == QueryKind::kStArrival || q->kind == QueryKind::kStReach;
      if (needs_target && !h.target) throw InvariantViolation(i, "st query without a target");
      if (!query_matches_problem(q->kind, h.problem)) {
        throw InvariantViolation(i, "query kind " + to_string(q->kind) + " does not fit problem " +
                                        to_string(h.problem));
      }
      continue;
    }
    if (h.mode == Mode::kIncremental && std::holds_alternative<DeleteEdge>(op)) {
      throw InvariantViolation(i, "delete in an incremental trace");
    }
    if (h.mode == Mode::kDecremental && std::holds_alternative<InsertEdge>(op)) {
      throw InvariantViolation(i, "insert in a decremental trace");
    }
    if (const auto* s = std::get_if<SetWeight>(&op)) {
      if (in_range(s->u) && in_range(s->v)) {
        auto old = g.weight(s->u, s->v);
        if (old && h.mode == Mode::kIncremental && s->w < *old) {
          throw InvariantViolation(i, "weight decrease in an incremental trace");
        }
        if (old && h.mode == Mode::kDecremental && s->w > *old) {
          throw InvariantViolation(i, "weight increase in a decremental trace");
        }
      }
    }
    try {
      g.apply(op);
    } catch (const Error& e) {
      throw InvariantViolation(i, e.what());
    }
  }
}

UpdateTrace load_trace(std::istream& in) {
  UpdateTrace t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, e.what());
    }
    if (!have_header) {
      if (!j.is_object() || !j.contains("header")) throw ParseError(lineno, "expected header line");
      t.header = header_from_json(j["header"], lineno);
      have_header = true;
      continue;
    }
    t.ops.push_back(op_from_json(j, lineno));
  }
  if (!have_header) throw ParseError(lineno, "empty trace");
  validate(t);
  return t;
}

UpdateTrace load_trace_file(const std::string& path) {
  auto in = open_in(path);
  return load_trace(in);
}

void save_trace(const UpdateTrace& t, std::ostream& out) {
  out << json{{"header", header_to_json(t.header)}}.dump() << '\n';
  for (const auto& op : t.ops) out << op_to_json(op).dump() << '\n';
}

void save_trace_file(const UpdateTrace& t, const std::string& path) {
  auto out = open_out(path);
  save_trace(t, out);
}

TraceResult load_result(std::istream& in) {
  TraceResult r;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, e.what());
    }
    if (!j.is_object() || !j.contains("answer")) throw ParseError(lineno, "expected {\"answer\":...}");
    const auto& a = j["answer"];
    if (a.is_array()) {
      std::vector<Scalar> v;
      for (const auto& x : a) v.push_back(scalar_from_json(x, lineno));
      r.answers.emplace_back(std::move(v));
    } else {
      r.answers.emplace_back(scalar_from_json(a, lineno));
    }
  }
  return r;
}

TraceResult load_result_file(const std::string& path) {
  auto in = open_in(path);
  return load_result(in);
}

void save_result(const TraceResult& r, std::ostream& out) {
  for (const auto& a : r.answers) out << json{{"answer", answer_json(a)}}.dump() << '\n';
}

void save_result_file(const TraceResult& r, const std::string& path) {
  auto out = open_out(path);
  save_result(r, out);
}

std::string answer_to_json(const Answer& a) { return answer_json(a).dump(); }

UpdateTrace compact_trace(const UpdateTrace& t) {
  UpdateTrace res;
  res.header = t.header;
  DynamicGraph g(t.header.n, t.header.directed, Mode::kFully);
  for (const auto& e : t.header.initial_edges) g.insert_edge(e.u, e.v, e.w);

  auto key = [&](Vertex u, Vertex v) {
    if (!t.header.directed && v < u) std::swap(u, v);
    return std::make_pair(u, v);
  };
  // Edge state at the start of the current run, for every edge touched in it.
  std::map<std::pair<Vertex, Vertex>, std::optional<Weight>> before;
  auto flush = [&]() {
    for (const auto& [e, old] : before) {
      auto now = g.weight(e.first, e.second);
      if (old == now) continue;
      if (!old) {
        res.ops.push_back(InsertEdge{e.first, e.second, *now});
      } else if (!now) {
        res.ops.push_back(DeleteEdge{e.first, e.second});
      } else {
        res.ops.push_back(SetWeight{e.first, e.second, *now});
      }
    }
    before.clear();
  };
  for (const auto& op : t.ops) {
    if (is_query(op)) {
      flush();
      res.ops.push_back(op);
      continue;
    }
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (!std::is_same_v<T, Query>) {
            auto k = key(o.u, o.v);
            if (!before.count(k)) before[k] = g.weight(k.first, k.second);
          }
        },
        op);
    g.apply(op);
  }
  flush();
  return res;
}

UpdateTrace sparsify_trace(const UpdateTrace& t, std::size_t n_target) {
  if (n_target < t.header.n) throw BadParameter("target vertex count below trace vertex count");
  UpdateTrace res = t;
  res.header.n = n_target;
  if (!res.header.node_weights.empty()) res.header.node_weights.resize(n_target, 0);
  return res;
}

UpdateTrace reverse_trace(const UpdateTrace& t, std::vector<std::size_t>* order) {
  DynamicGraph g(t.header.n, t.header.directed, Mode::kFully);
  for (const auto& e : t.header.initial_edges) g.insert_edge(e.u, e.v, e.w);
  std::vector<UpdateOp> inverse(t.ops.size());
  std::vector<std::size_t> query_index(t.ops.size(), 0);
  std::size_t q = 0;
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    const auto& op = t.ops[i];
    if (is_query(op)) {
      inverse[i] = op;
      query_index[i] = q++;
      continue;
    }
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      inverse[i] = DeleteEdge{ins->u, ins->v};
    } else if (const auto* del = std::get_if<DeleteEdge>(&op)) {
      inverse[i] = InsertEdge{del->u, del->v, *g.weight(del->u, del->v)};
    } else {
      const auto& s = std::get<SetWeight>(op);
      inverse[i] = SetWeight{s.u, s.v, *g.weight(s.u, s.v)};
    }
    g.apply(op);
  }
  UpdateTrace res;
  res.header = t.header;
  res.header.initial_edges = g.edges();
  if (t.header.mode == Mode::kIncremental) res.header.mode = Mode::kDecremental;
  else if (t.header.mode == Mode::kDecremental) res.header.mode = Mode::kIncremental;
  if (order) order->clear();
  for (std::size_t i = t.ops.size(); i-- > 0;) {
    res.ops.push_back(inverse[i]);
    if (order && is_query(t.ops[i])) order->push_back(query_index[i]);
  }
  return res;
}

}  // namespace dynpath
