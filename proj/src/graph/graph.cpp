#include "dynpath/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <utility>

namespace dynpath {

DynamicGraph::DynamicGraph(std::size_t n, bool directed, Mode mode)
    : directed_(directed), mode_(mode), out_(n), in_(directed ? n : 0) {}

void DynamicGraph::check_vertex(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= out_.size()) {
    throw VertexOutOfRange("vertex " + std::to_string(v) + " out of range");
  }
}

void DynamicGraph::link(Vertex u, Vertex v, Weight w) {
  out_[u][v] = w;
  if (directed_) {
    in_[v][u] = w;
  } else {
    out_[v][u] = w;
  }
}

void DynamicGraph::unlink(Vertex u, Vertex v) {
  out_[u].erase(v);
  if (directed_) {
    in_[v].erase(u);
  } else {
    out_[v].erase(u);
  }
}

bool DynamicGraph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  return out_[u].count(v) > 0;
}

std::optional<Weight> DynamicGraph::weight(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  auto it = out_[u].find(v);
  if (it == out_[u].end()) return std::nullopt;
  return it->second;
}

void DynamicGraph::insert_edge(Vertex u, Vertex v, Weight w) {
  check_vertex(u);
  check_vertex(v);
  if (mode_ == Mode::kDecremental) {
    throw MonotonicityViolation("insert on a decremental graph");
  }
  if (out_[u].count(v)) {
    throw EdgeExists("edge (" + std::to_string(u) + "," + std::to_string(v) + ") exists");
  }
  link(u, v, w);
  ++edge_count_;
  ++version_;
}

void DynamicGraph::delete_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (mode_ == Mode::kIncremental) {
    throw MonotonicityViolation("delete on an incremental graph");
  }
  if (!out_[u].count(v)) {
    throw EdgeAbsent("edge (" + std::to_string(u) + "," + std::to_string(v) + ") absent");
  }
  unlink(u, v);
  --edge_count_;
  ++version_;
}

void DynamicGraph::set_weight(Vertex u, Vertex v, Weight w) {
  check_vertex(u);
  check_vertex(v);
  auto it = out_[u].find(v);
  if (it == out_[u].end()) {
    throw EdgeAbsent("edge (" + std::to_string(u) + "," + std::to_string(v) + ") absent");
  }
  if (mode_ == Mode::kIncremental && w < it->second) {
    throw MonotonicityViolation("weight decrease on an incremental graph");
  }
  if (mode_ == Mode::kDecremental && w > it->second) {
    throw MonotonicityViolation("weight increase on a decremental graph");
  }
  link(u, v, w);
  ++version_;
}

void DynamicGraph::apply(const UpdateOp& op) {
  std::visit(
      [this](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, InsertEdge>) {
          insert_edge(o.u, o.v, o.w);
        } else if constexpr (std::is_same_v<T, DeleteEdge>) {
          delete_edge(o.u, o.v);
        } else if constexpr (std::is_same_v<T, SetWeight>) {
          set_weight(o.u, o.v, o.w);
        }
      },
      op);
}

std::vector<Edge> DynamicGraph::edges() const {
  std::vector<Edge> res;
  res.reserve(edge_count_);
  for (std::size_t u = 0; u < out_.size(); ++u) {
    for (const auto& [v, w] : out_[u]) {
      if (!directed_ && v < static_cast<Vertex>(u)) continue;
      res.push_back({static_cast<Vertex>(u), v, w});
    }
  }
  return res;
}

void DynamicGraph::set_node_weights(std::vector<Weight> w) {
  if (!w.empty() && w.size() != out_.size()) {
    throw ShapeMismatch("node weight vector has wrong length");
  }
  node_weights_ = std::move(w);
}

namespace {
constexpr std::pair<QueryKind, const char*> kQueryNames[] = {
    {QueryKind::kStDist, "st_dist"},           {QueryKind::kSsspAll, "sssp_all"},
    {QueryKind::kStBottleneck, "st_bottleneck"}, {QueryKind::kSsbpAll, "ssbp_all"},
    {QueryKind::kStArrival, "st_arrival"},     {QueryKind::kSseaAll, "ssea_all"},
    {QueryKind::kStReach, "st_reach"},
};
constexpr std::pair<Mode, const char*> kModeNames[] = {
    {Mode::kIncremental, "incremental"},
    {Mode::kDecremental, "decremental"},
    {Mode::kFully, "fully"},
};
}  // namespace

std::string to_string(QueryKind k) {
  for (const auto& [kind, name] : kQueryNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<QueryKind> query_kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : kQueryNames) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

std::string to_string(Mode m) {
  for (const auto& [mode, name] : kModeNames) {
    if (mode == m) return name;
  }
  return "?";
}

std::optional<Mode> mode_from_string(const std::string& s) {
  for (const auto& [mode, name] : kModeNames) {
    if (s == name) return mode;
  }
  return std::nullopt;
}

std::vector<std::optional<Weight>> static_sssp(const DynamicGraph& g, Vertex s) {
  std::vector<std::optional<Weight>> dist(g.n());
  using Item = std::pair<Weight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != *dist[v]) continue;
    for (const auto& [w, wt] : g.out(v)) {
      Weight nd = d + wt;
      if (!dist[w] || nd < *dist[w]) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

std::vector<bool> static_reach(const DynamicGraph& g, Vertex s) {
  std::vector<bool> seen(g.n(), false);
  std::deque<Vertex> q{s};
  seen[s] = true;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop_front();
    for (const auto& [w, wt] : g.out(v)) {
      if (!seen[w]) {
        seen[w] = true;
        q.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace dynpath
