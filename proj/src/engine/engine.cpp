#include "dynpath/engine.hpp"

#include <algorithm>
#include <set>

#include "dynpath/bottleneck.hpp"
#include "dynpath/earliest_arrival.hpp"
#include "dynpath/node_weighted.hpp"
#include "dynpath/reachability.hpp"

namespace dynpath {

namespace {

enum class Family { kDistance, kNodeWeighted, kBottleneck, kArrival, kReach };

Family family_of(Problem p) {
  switch (p) {
    case Problem::kStsp:
    case Problem::kSssp:
      return Family::kDistance;
    case Problem::kNwStsp:
    case Problem::kNwSssp:
      return Family::kNodeWeighted;
    case Problem::kStbp:
    case Problem::kSsbp:
      return Family::kBottleneck;
    case Problem::kStea:
    case Problem::kSsea:
      return Family::kArrival;
    case Problem::kStReach:
      return Family::kReach;
  }
  return Family::kDistance;
}

bool single_target(QueryKind k) {
  return k == QueryKind::kStDist || k == QueryKind::kStBottleneck || k == QueryKind::kStArrival ||
         k == QueryKind::kStReach;
}

Answer shape(QueryKind k, const TraceHeader& h, std::vector<Scalar> row) {
  if (single_target(k)) return Scalar(row[*h.target]);
  return row;
}

bool has_setw(const UpdateTrace& t) {
  return std::any_of(t.ops.begin(), t.ops.end(),
                     [](const UpdateOp& op) { return std::holds_alternative<SetWeight>(op); });
}

class RecomputeEngine : public Engine {
 public:
  explicit RecomputeEngine(bool off_by_one) : shift_(off_by_one ? 1 : 0) {}

  std::string name() const override { return shift_ ? "recompute-off-by-one" : "recompute"; }
  bool supports(const TraceHeader&) const override { return true; }

  void reset(const UpdateTrace& t) override {
    header_ = t.header;
    TraceHeader h = t.header;
    for (auto& e : h.initial_edges) e.w = bump(e.w);
    for (auto& w : h.node_weights) w = bump(w);
    graph_ = initial_graph(h);
    queries_ = 0;
  }

  void apply(const UpdateOp& op) override {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      graph_.insert_edge(ins->u, ins->v, bump(ins->w));
    } else if (const auto* s = std::get_if<SetWeight>(&op)) {
      graph_.set_weight(s->u, s->v, bump(s->w));
    } else {
      graph_.apply(op);
    }
  }

  Answer query(QueryKind k) override {
    ++queries_;
    const Vertex s = header_.source;
    std::vector<Scalar> row;
    switch (family_of(header_.problem)) {
      case Family::kDistance:
        row = static_sssp(graph_, s);
        break;
      case Family::kNodeWeighted:
        row = static_nw_sssp(graph_, s);
        break;
      case Family::kBottleneck:
        row = static_ssbp(graph_, s);
        break;
      case Family::kArrival:
        row = static_ssea(graph_, s);
        break;
      case Family::kReach: {
        auto r = static_reach(graph_, s);
        row.resize(r.size());
        for (std::size_t v = 0; v < r.size(); ++v) row[v] = r[v] ? 1 : 0;
        break;
      }
    }
    return shape(k, header_, std::move(row));
  }

  std::map<std::string, std::uint64_t> counters() const override {
    return {{"queries", queries_}};
  }

 private:
  Weight bump(Weight w) const { return w == kInf ? w : w + shift_; }

  Weight shift_;
  TraceHeader header_;
  DynamicGraph graph_;
  std::uint64_t queries_ = 0;
};

class SseaEngine : public Engine {
 public:
  std::string name() const override { return "ssea-dynamic"; }
  bool supports(const TraceHeader& h) const override {
    return family_of(h.problem) == Family::kArrival && h.mode != Mode::kFully;
  }
  void reset(const UpdateTrace& t) override {
    if (has_setw(t)) throw IncompatibleEngine("ssea-dynamic handles edge updates only");
    header_ = t.header;
    ds_ = std::make_unique<DynamicSsea>(t.header.n, t.header.directed, t.header.source,
                                        t.header.mode, t.header.initial_edges);
  }
  void apply(const UpdateOp& op) override {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      ds_->insert(ins->u, ins->v, ins->w);
    } else if (const auto* del = std::get_if<DeleteEdge>(&op)) {
      ds_->remove(del->u, del->v);
    } else {
      throw IncompatibleEngine("ssea-dynamic handles edge updates only");
    }
  }
  Answer query(QueryKind k) override {
    if (single_target(k)) return ds_->arrival(*header_.target);
    return ds_->arrivals();
  }
  std::map<std::string, std::uint64_t> counters() const override {
    return {{"gadget_edges", ds_->gadget_edges()}, {"reach_work", ds_->reach_work()}};
  }

 private:
  TraceHeader header_;
  std::unique_ptr<DynamicSsea> ds_;
};

class ThresholdEngine : public Engine {
 public:
  std::string name() const override { return "stbp-threshold"; }
  bool supports(const TraceHeader& h) const override {
    return h.problem == Problem::kStbp && h.mode != Mode::kFully && h.target.has_value();
  }
  void reset(const UpdateTrace& t) override {
    if (has_setw(t)) throw IncompatibleEngine("stbp-threshold handles edge updates only");
    const auto& h = t.header;
    ds_ = std::make_unique<ThresholdStBp>(h.n, h.directed, h.source, *h.target, h.mode,
                                          h.initial_edges);
  }
  void apply(const UpdateOp& op) override {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      ds_->insert(ins->u, ins->v, ins->w);
    } else if (const auto* del = std::get_if<DeleteEdge>(&op)) {
      ds_->remove(del->u, del->v);
    } else {
      throw IncompatibleEngine("stbp-threshold handles edge updates only");
    }
  }
  Answer query(QueryKind) override { return ds_->value(); }
  std::map<std::string, std::uint64_t> counters() const override {
    return {{"reach_ops", ds_->loads() + ds_->unloads()},
            {"reach_arc_ops", ds_->reach_inserts() + ds_->reach_deletes()},
            {"edges_seen", ds_->edges_seen()}};
  }

 private:
  std::unique_ptr<ThresholdStBp> ds_;
};

class LayeredEngine : public Engine {
 public:
  std::string name() const override { return "ssbp-layered"; }
  bool supports(const TraceHeader& h) const override {
    return family_of(h.problem) == Family::kBottleneck && h.mode != Mode::kFully;
  }
  void reset(const UpdateTrace& t) override {
    if (has_setw(t)) throw IncompatibleEngine("ssbp-layered handles edge updates only");
    header_ = t.header;
    std::set<Weight> universe;
    for (const auto& e : t.header.initial_edges) universe.insert(e.w);
    for (const auto& op : t.ops) {
      if (const auto* ins = std::get_if<InsertEdge>(&op)) universe.insert(ins->w);
    }
    ds_ = std::make_unique<LayeredSsbp>(header_.n, header_.directed, header_.source, header_.mode,
                                        header_.initial_edges,
                                        std::vector<Weight>(universe.begin(), universe.end()));
  }
  void apply(const UpdateOp& op) override {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      ds_->insert(ins->u, ins->v, ins->w);
    } else if (const auto* del = std::get_if<DeleteEdge>(&op)) {
      ds_->remove(del->u, del->v);
    } else {
      throw IncompatibleEngine("ssbp-layered handles edge updates only");
    }
  }
  Answer query(QueryKind k) override {
    if (single_target(k)) return ds_->value(*header_.target);
    return ds_->values();
  }
  std::map<std::string, std::uint64_t> counters() const override {
    return {{"max_probes", ds_->max_probes()}, {"universe", ds_->universe_size()}};
  }

 private:
  TraceHeader header_;
  std::unique_ptr<LayeredSsbp> ds_;
};

class DyadicEngine : public Engine {
 public:
  explicit DyadicEngine(const EngineParams& p) : params_(p) {}
  std::string name() const override { return "ssbp-dyadic"; }
  bool supports(const TraceHeader& h) const override {
    return family_of(h.problem) == Family::kBottleneck && h.mode == Mode::kIncremental;
  }
  void reset(const UpdateTrace& t) override {
    if (has_setw(t)) throw IncompatibleEngine("ssbp-dyadic handles insertions only");
    header_ = t.header;
    ds_ = std::make_unique<DyadicSsbp>(header_.n, header_.directed, header_.source,
                                       params_.dyadic_t, params_.dyadic_g);
    for (const auto& e : header_.initial_edges) ds_->insert(e.u, e.v, e.w);
  }
  void apply(const UpdateOp& op) override {
    const auto* ins = std::get_if<InsertEdge>(&op);
    if (!ins) throw IncompatibleEngine("ssbp-dyadic handles insertions only");
    ds_->insert(ins->u, ins->v, ins->w);
  }
  Answer query(QueryKind k) override {
    if (single_target(k)) return ds_->value(*header_.target);
    return ds_->values();
  }
  std::map<std::string, std::uint64_t> counters() const override {
    return {{"intervals", ds_->intervals_built()}, {"block", ds_->block()}};
  }

 private:
  EngineParams params_;
  TraceHeader header_;
  std::unique_ptr<DyadicSsbp> ds_;
};

class MstEngine : public Engine {
 public:
  std::string name() const override { return "ssbp-mst"; }
  bool supports(const TraceHeader& h) const override {
    return family_of(h.problem) == Family::kBottleneck && !h.directed;
  }
  void reset(const UpdateTrace& t) override {
    header_ = t.header;
    graph_ = initial_graph(t.header);
  }
  void apply(const UpdateOp& op) override { graph_.apply(op); }
  Answer query(QueryKind k) override { return shape(k, header_, mst_ssbp(graph_, header_.source)); }

 private:
  TraceHeader header_;
  DynamicGraph graph_;
};

class BatchedEngine : public Engine {
 public:
  explicit BatchedEngine(const EngineParams& p) : params_(p) {}
  std::string name() const override { return "nw-batched"; }
  bool supports(const TraceHeader& h) const override {
    return family_of(h.problem) == Family::kNodeWeighted && h.mode == Mode::kIncremental &&
           h.node_weights.size() == h.n;
  }
  void reset(const UpdateTrace& t) override {
    header_ = t.header;
    ds_ = std::make_unique<BatchedNwSp>(header_.n, header_.directed, header_.node_weights,
                                        header_.source, params_.batch_t, header_.initial_edges);
  }
  void apply(const UpdateOp& op) override {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      ds_->insert(ins->u, ins->v);
    } else if (std::holds_alternative<SetWeight>(op)) {
      // Edge weights play no part in node-weighted distances.
    } else {
      throw MonotonicityViolation("nw-batched is insert-only");
    }
  }
  Answer query(QueryKind k) override {
    if (single_target(k)) return ds_->value(*header_.target);
    return ds_->values();
  }
  std::map<std::string, std::uint64_t> counters() const override {
    return {{"rebuilds", ds_->rebuilds()}, {"batch", ds_->batch_size()}};
  }

 private:
  EngineParams params_;
  TraceHeader header_;
  std::unique_ptr<BatchedNwSp> ds_;
};

class ReachEngine : public Engine {
 public:
  std::string name() const override { return "reach-dynamic"; }
  bool supports(const TraceHeader& h) const override {
    return h.problem == Problem::kStReach && h.target.has_value();
  }
  void reset(const UpdateTrace& t) override {
    const auto& h = t.header;
    header_ = h;
    inc_.reset();
    dec_.reset();
    fully_.reset();
    if (h.mode == Mode::kIncremental) {
      inc_ = std::make_unique<IncrementalSsr>(h.n, h.source);
      for (const auto& e : h.initial_edges) add(e.u, e.v);
    } else if (h.mode == Mode::kDecremental) {
      std::vector<std::pair<Vertex, Vertex>> arcs;
      for (const auto& e : h.initial_edges) {
        arcs.emplace_back(e.u, e.v);
        if (!h.directed) arcs.emplace_back(e.v, e.u);
      }
      dec_ = std::make_unique<DecrementalSsr>(h.n, h.source, arcs);
    } else {
      fully_ = std::make_unique<FullyDynamicStReach>(h.n, h.source, *h.target);
      for (const auto& e : h.initial_edges) add(e.u, e.v);
    }
  }
  void apply(const UpdateOp& op) override {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      if (dec_) throw MonotonicityViolation("insert in a decremental trace");
      add(ins->u, ins->v);
    } else if (const auto* del = std::get_if<DeleteEdge>(&op)) {
      if (inc_) throw MonotonicityViolation("delete in an incremental trace");
      drop(del->u, del->v);
    }
  }
  Answer query(QueryKind) override {
    const Vertex t = *header_.target;
    bool r;
    if (inc_) {
      r = inc_->reached(t);
    } else if (dec_) {
      r = dec_->reached(t);
    } else {
      r = fully_->query();
    }
    return Scalar(r ? 1 : 0);
  }
  std::map<std::string, std::uint64_t> counters() const override {
    if (inc_) return {{"edges_scanned", inc_->edges_scanned()}, {"arcs", inc_->edges_inserted()}};
    if (dec_) return {{"work", dec_->work()}};
    return {{"reach_ops", fully_->inserts() + fully_->deletes()}};
  }

 private:
  void add(Vertex u, Vertex v) {
    if (inc_) {
      inc_->insert(u, v);
      if (!header_.directed) inc_->insert(v, u);
    } else {
      fully_->insert(u, v);
      if (!header_.directed) fully_->insert(v, u);
    }
  }
  void drop(Vertex u, Vertex v) {
    if (dec_) {
      dec_->remove(u, v);
      if (!header_.directed) dec_->remove(v, u);
    } else {
      fully_->remove(u, v);
      if (!header_.directed) fully_->remove(v, u);
    }
  }

  TraceHeader header_;
  std::unique_ptr<IncrementalSsr> inc_;
  std::unique_ptr<DecrementalSsr> dec_;
  std::unique_ptr<FullyDynamicStReach> fully_;
};

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used != value.size()) throw BadParameter("");
    return d;
  } catch (const std::exception&) {
    throw BadParameter("parameter " + key + " needs a number, got '" + value + "'");
  }
}

}  // namespace

EngineParams parse_engine_params(const std::map<std::string, std::string>& kv) {
  EngineParams p;
  for (const auto& [k, v] : kv) {
    if (k == "dyadic.t") {
      p.dyadic_t = parse_double(k, v);
    } else if (k == "dyadic.g") {
      p.dyadic_g = parse_double(k, v);
    } else if (k == "batch.t") {
      p.batch_t = parse_double(k, v);
    } else {
      throw BadParameter("unknown engine parameter " + k);
    }
  }
  return p;
}

const std::vector<std::string>& engine_names() {
  static const std::vector<std::string> names{
      "recompute",   "recompute-off-by-one", "ssea-dynamic", "stbp-threshold", "ssbp-layered",
      "ssbp-dyadic", "ssbp-mst",             "nw-batched",   "reach-dynamic"};
  return names;
}

std::unique_ptr<Engine> make_engine(const std::string& name, const EngineParams& p) {
  if (name == "recompute") return std::make_unique<RecomputeEngine>(false);
  if (name == "recompute-off-by-one") return std::make_unique<RecomputeEngine>(true);
  if (name == "ssea-dynamic") return std::make_unique<SseaEngine>();
  if (name == "stbp-threshold") return std::make_unique<ThresholdEngine>();
  if (name == "ssbp-layered") return std::make_unique<LayeredEngine>();
  if (name == "ssbp-dyadic") return std::make_unique<DyadicEngine>(p);
  if (name == "ssbp-mst") return std::make_unique<MstEngine>();
  if (name == "nw-batched") return std::make_unique<BatchedEngine>(p);
  if (name == "reach-dynamic") return std::make_unique<ReachEngine>();
  throw BadParameter("unknown engine " + name);
}

TraceResult run_trace(Engine& e, const UpdateTrace& t) {
  if (!e.supports(t.header)) {
    throw IncompatibleEngine(e.name() + " does not support " + to_string(t.header.problem) + " (" +
                             to_string(t.header.mode) + ")");
  }
  e.reset(t);
  TraceResult res;
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    if (const auto* q = std::get_if<Query>(&t.ops[i])) {
      if (!query_matches_problem(q->kind, t.header.problem)) {
        throw InvariantViolation(i, "query kind does not fit the problem");
      }
      res.answers.push_back(e.query(q->kind));
    } else {
      e.apply(t.ops[i]);
    }
  }
  return res;
}

TraceResult recompute_results(const UpdateTrace& t) {
  RecomputeEngine e(false);
  return run_trace(e, t);
}

}  // namespace dynpath
