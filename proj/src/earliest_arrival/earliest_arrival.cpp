#include "dynpath/earliest_arrival.hpp"

#include <algorithm>
#include <queue>

namespace dynpath {

namespace {
std::pair<Vertex, Vertex> edge_key(bool directed, Vertex u, Vertex v) {
  if (!directed && v < u) std::swap(u, v);
  return {u, v};
}
}  // namespace

std::vector<std::optional<Weight>> static_ssea(const DynamicGraph& g, Vertex s) {
  // Arrival labels; the source starts at -inf so every edge leaving it is usable.
  std::vector<std::optional<Weight>> best(g.n());
  using Item = std::pair<Weight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  best[s] = kNegInf;
  pq.push({kNegInf, s});
  while (!pq.empty()) {
    auto [a, v] = pq.top();
    pq.pop();
    if (a != *best[v]) continue;
    for (const auto& [w, wt] : g.out(v)) {
      if (wt < a) continue;
      if (!best[w] || wt < *best[w]) {
        best[w] = wt;
        pq.push({wt, w});
      }
    }
  }
  best[s] = 0;
  return best;
}

std::vector<std::pair<Vertex, Vertex>> chain_gadget_arcs(std::size_t n, Vertex s,
                                                         const std::vector<Edge>& edges) {
  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::vector<std::vector<std::tuple<Weight, int, std::size_t, Vertex>>> chain(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    Vertex p = ChainGadgetLayout::p(e);
    Vertex q = ChainGadgetLayout::q(e);
    arcs.emplace_back(p, q);
    if (ed.u == s) arcs.emplace_back(0, p);
    chain[ed.u].emplace_back(ed.w, 1, e, p);
    chain[ed.v].emplace_back(ed.w, 0, e, q);
  }
  for (auto& c : chain) {
    std::sort(c.begin(), c.end());
    for (std::size_t i = 1; i < c.size(); ++i) arcs.emplace_back(std::get<3>(c[i - 1]), std::get<3>(c[i]));
  }
  return arcs;
}

DynamicSsea::DynamicSsea(std::size_t n, bool directed, Vertex s, Mode mode,
                         const std::vector<Edge>& initial)
    : n_(n), directed_(directed), s_(s), mode_(mode), chain_(n), in_arrivals_(n) {
  if (mode == Mode::kFully) throw Unsupported("dynamic earliest arrival is partially dynamic only");
  if (mode == Mode::kIncremental) {
    inc_ = std::make_unique<IncrementalSsr>(1, 0);
    inc_->set_on_reach([this](Vertex x) { on_p_reached(x); });
    for (const auto& e : initial) insert(e.u, e.v, e.w);
    return;
  }
  for (const auto& e : initial) {
    auto key = edge_key(directed_, e.u, e.v);
    auto& ids = edge_ids_[key];
    ids.push_back(arcs_.size());
    arcs_.push_back({e.u, e.v, e.w, true});
    if (!directed_) {
      ids.push_back(arcs_.size());
      arcs_.push_back({e.v, e.u, e.w, true});
    }
  }
  std::vector<Edge> arc_list;
  for (const auto& a : arcs_) arc_list.push_back({a.tail, a.head, a.w});
  auto gadget = chain_gadget_arcs(n, s, arc_list);
  gadget_edges_ = gadget.size();
  dec_ = std::make_unique<DecrementalSsr>(1 + 2 * arcs_.size(), 0, gadget);
  p_counted_.assign(arcs_.size(), false);
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    if (dec_->reached(ChainGadgetLayout::p(e))) {
      p_counted_[e] = true;
      in_arrivals_[arcs_[e].head].insert(arcs_[e].w);
    }
  }
  dec_->set_on_unreach([this](Vertex x) { on_p_lost(x); });
}

void DynamicSsea::add_gadget_edge(Vertex a, Vertex b) {
  ++gadget_edges_;
  inc_->insert(a, b);
}

void DynamicSsea::splice(Vertex at, const ChainKey& key, Vertex node) {
  auto& c = chain_[at];
  auto [it, ok] = c.emplace(key, node);
  if (it != c.begin()) add_gadget_edge(std::prev(it)->second, node);
  if (auto nx = std::next(it); nx != c.end()) add_gadget_edge(node, nx->second);
}

void DynamicSsea::add_arc(Vertex u, Vertex v, Weight w) {
  std::size_t e = arcs_.size();
  arcs_.push_back({u, v, w, true});
  p_counted_.push_back(false);
  Vertex p = inc_->add_vertex();
  Vertex q = inc_->add_vertex();
  add_gadget_edge(p, q);
  splice(v, {w, 0, e}, q);
  splice(u, {w, 1, e}, p);
  if (u == s_) add_gadget_edge(0, p);
}

void DynamicSsea::insert(Vertex u, Vertex v, Weight w) {
  if (!inc_) throw MonotonicityViolation("insert on a decremental structure");
  auto key = edge_key(directed_, u, v);
  if (edge_ids_.count(key)) throw EdgeExists("edge exists");
  auto& ids = edge_ids_[key];
  ids.push_back(arcs_.size());
  add_arc(u, v, w);
  if (!directed_) {
    edge_ids_[key].push_back(arcs_.size());
    add_arc(v, u, w);
  }
}

void DynamicSsea::remove(Vertex u, Vertex v) {
  if (!dec_) throw MonotonicityViolation("delete on an incremental structure");
  auto key = edge_key(directed_, u, v);
  auto it = edge_ids_.find(key);
  if (it == edge_ids_.end()) throw EdgeAbsent("edge absent");
  auto ids = it->second;
  edge_ids_.erase(it);
  for (std::size_t e : ids) {
    auto& a = arcs_[e];
    a.alive = false;
    if (p_counted_[e]) {
      in_arrivals_[a.head].erase(in_arrivals_[a.head].find(a.w));
      p_counted_[e] = false;
    }
    dec_->remove(ChainGadgetLayout::p(e), ChainGadgetLayout::q(e));
  }
}

void DynamicSsea::on_p_reached(Vertex x) {
  if (x == 0 || x % 2 == 0) return;
  std::size_t e = static_cast<std::size_t>(x - 1) / 2;
  if (e >= arcs_.size() || !arcs_[e].alive || p_counted_[e]) return;
  p_counted_[e] = true;
  in_arrivals_[arcs_[e].head].insert(arcs_[e].w);
}

void DynamicSsea::on_p_lost(Vertex x) {
  if (x == 0 || x % 2 == 0) return;
  std::size_t e = static_cast<std::size_t>(x - 1) / 2;
  if (!p_counted_[e]) return;
  p_counted_[e] = false;
  in_arrivals_[arcs_[e].head].erase(in_arrivals_[arcs_[e].head].find(arcs_[e].w));
}

std::optional<Weight> DynamicSsea::arrival(Vertex v) const {
  if (v == s_) return 0;
  if (in_arrivals_[v].empty()) return std::nullopt;
  return *in_arrivals_[v].begin();
}

std::vector<std::optional<Weight>> DynamicSsea::arrivals() const {
  std::vector<std::optional<Weight>> res(n_);
  for (std::size_t v = 0; v < n_; ++v) res[v] = arrival(static_cast<Vertex>(v));
  return res;
}

std::uint64_t DynamicSsea::reach_work() const {
  return inc_ ? inc_->edges_scanned() : dec_->work();
}

}  // namespace dynpath
