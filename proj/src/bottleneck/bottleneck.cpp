#include "dynpath/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace dynpath {

namespace {

std::pair<Vertex, Vertex> edge_key(bool directed, Vertex u, Vertex v) {
  if (!directed && v < u) std::swap(u, v);
  return {u, v};
}

}  // namespace

std::vector<std::optional<Weight>> static_ssbp(const DynamicGraph& g, Vertex s) {
  std::vector<std::optional<Weight>> cap(g.n());
  std::priority_queue<std::pair<Weight, Vertex>> pq;
  cap[s] = kInf;
  pq.push({kInf, s});
  while (!pq.empty()) {
    auto [c, v] = pq.top();
    pq.pop();
    if (c != *cap[v]) continue;
    for (const auto& [w, wt] : g.out(v)) {
      const Weight nc = std::min(c, wt);
      if (!cap[w] || nc > *cap[w]) {
        cap[w] = nc;
        pq.push({nc, w});
      }
    }
  }
  return cap;
}

std::vector<std::vector<std::optional<Weight>>> static_apbp(const DynamicGraph& g, Backend be) {
  std::vector<std::vector<std::optional<Weight>>> res(g.n());
  const auto n = static_cast<std::int64_t>(g.n());
#pragma omp parallel for schedule(dynamic, 1) if (be == Backend::kParallel)
  for (std::int64_t s = 0; s < n; ++s) res[s] = static_ssbp(g, static_cast<Vertex>(s));
  return res;
}

std::vector<std::optional<Weight>> mst_ssbp(const DynamicGraph& g, Vertex s) {
  if (g.directed()) throw Unsupported("spanning-tree bottleneck needs an undirected graph");
  auto edges = g.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w > b.w; });
  std::vector<Vertex> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::pair<Vertex, Weight>>> tree(g.n());
  for (const auto& e : edges) {
    Vertex a = find(e.u), b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    tree[e.u].push_back({e.v, e.w});
    tree[e.v].push_back({e.u, e.w});
  }
  std::vector<std::optional<Weight>> res(g.n());
  res[s] = kInf;
  std::vector<Vertex> stack{s};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (auto [w, wt] : tree[v]) {
      if (res[w]) continue;
      res[w] = std::min(*res[v], wt);
      stack.push_back(w);
    }
  }
  return res;
}

ThresholdStBp::ThresholdStBp(std::size_t n, bool directed, Vertex s, Vertex t, Mode mode,
                             const std::vector<Edge>& initial, StReachStrategy strategy)
    : directed_(directed), s_(s), t_(t), mode_(mode), reach_(n, s, t, strategy) {
  if (mode == Mode::kFully) throw Unsupported("threshold bottleneck is partially dynamic only");
  if (mode == Mode::kIncremental) {
    for (const auto& e : initial) insert(e.u, e.v, e.w);
    return;
  }
  for (const auto& e : initial) {
    auto key = edge_key(directed_, e.u, e.v);
    if (ids_.count(key)) throw EdgeExists("edge exists");
    ids_[key] = edges_.size();
    edges_.push_back({e.u, e.v, e.w});
  }
  order_.resize(edges_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return edges_[a].w > edges_[b].w; });
  advance();
}

void ThresholdStBp::load(std::size_t id) {
  auto& e = edges_[id];
  e.loaded = true;
  ++loads_;
  reach_.insert(e.u, e.v);
  if (!directed_) reach_.insert(e.v, e.u);
}

void ThresholdStBp::unload(std::size_t id) {
  auto& e = edges_[id];
  e.loaded = false;
  ++unloads_;
  reach_.remove(e.u, e.v);
  if (!directed_) reach_.remove(e.v, e.u);
}

void ThresholdStBp::advance() {
  // Loaded set: every live edge at or above the weight of the last one loaded.
  std::optional<std::size_t> last;
  while (!reach_.query() && cursor_ < order_.size()) {
    const std::size_t id = order_[cursor_++];
    if (!edges_[id].alive) continue;
    load(id);
    last = id;
  }
  if (!reach_.query()) {
    answer_.reset();
  } else if (last) {
    answer_ = edges_[*last].w;
  }
}

void ThresholdStBp::shrink() {
  // Unload lightest edges until s no longer reaches t; the edge that breaks
  // reachability carries the answer. Loaded set becomes: weight > answer.
  while (!loaded_.empty()) {
    auto [w, id] = *loaded_.begin();
    loaded_.erase(loaded_.begin());
    unload(id);
    if (!reach_.query()) {
      answer_ = w;
      break;
    }
  }
  while (!loaded_.empty() && loaded_.begin()->first == *answer_) {
    unload(loaded_.begin()->second);
    loaded_.erase(loaded_.begin());
  }
}

void ThresholdStBp::insert(Vertex u, Vertex v, Weight w) {
  if (mode_ != Mode::kIncremental) throw MonotonicityViolation("insert on a decremental structure");
  auto key = edge_key(directed_, u, v);
  if (ids_.count(key)) throw EdgeExists("edge exists");
  const std::size_t id = edges_.size();
  ids_[key] = id;
  edges_.push_back({u, v, w});
  if (s_ == t_ || (answer_ && w <= *answer_)) return;
  load(id);
  loaded_.insert({w, id});
  if (reach_.query()) shrink();
}

void ThresholdStBp::remove(Vertex u, Vertex v) {
  if (mode_ != Mode::kDecremental) throw MonotonicityViolation("delete on an incremental structure");
  auto it = ids_.find(edge_key(directed_, u, v));
  if (it == ids_.end()) throw EdgeAbsent("edge absent");
  const std::size_t id = it->second;
  ids_.erase(it);
  edges_[id].alive = false;
  if (edges_[id].loaded) {
    unload(id);
    advance();
  }
}

std::optional<Weight> ThresholdStBp::value() const {
  if (s_ == t_) return kInf;
  return answer_;
}

LayeredSsbp::LayeredSsbp(std::size_t n, bool directed, Vertex s, Mode mode,
                         const std::vector<Edge>& initial, std::vector<Weight> universe)
    : n_(n), directed_(directed), s_(s), mode_(mode), universe_(std::move(universe)) {
  if (mode == Mode::kFully) throw Unsupported("layered bottleneck is partially dynamic only");
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  if (mode == Mode::kIncremental) {
    for (std::size_t j = 0; j < universe_.size(); ++j) {
      inc_.push_back(std::make_unique<IncrementalSsr>(n, s));
    }
    for (const auto& e : initial) insert(e.u, e.v, e.w);
    return;
  }
  for (const auto& e : initial) {
    level_of(e.w);
    auto key = edge_key(directed_, e.u, e.v);
    if (weights_.count(key)) throw EdgeExists("edge exists");
    weights_[key] = e.w;
  }
  for (std::size_t j = 0; j < universe_.size(); ++j) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (const auto& e : initial) {
      if (e.w < universe_[j]) continue;
      arcs.emplace_back(e.u, e.v);
      if (!directed_) arcs.emplace_back(e.v, e.u);
    }
    dec_.push_back(std::make_unique<DecrementalSsr>(n, s, arcs));
  }
}

std::size_t LayeredSsbp::level_of(Weight w) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), w);
  if (it == universe_.end() || *it != w) throw BadParameter("weight outside the universe");
  return static_cast<std::size_t>(it - universe_.begin());
}

void LayeredSsbp::insert(Vertex u, Vertex v, Weight w) {
  if (mode_ != Mode::kIncremental) throw MonotonicityViolation("insert on a decremental structure");
  const std::size_t top = level_of(w);
  auto key = edge_key(directed_, u, v);
  if (weights_.count(key)) throw EdgeExists("edge exists");
  weights_[key] = w;
  const auto levels = static_cast<std::int64_t>(top + 1);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < levels; ++j) {
    inc_[j]->insert(u, v);
    if (!directed_) inc_[j]->insert(v, u);
  }
}

void LayeredSsbp::remove(Vertex u, Vertex v) {
  if (mode_ != Mode::kDecremental) throw MonotonicityViolation("delete on an incremental structure");
  auto it = weights_.find(edge_key(directed_, u, v));
  if (it == weights_.end()) throw EdgeAbsent("edge absent");
  const std::size_t top = level_of(it->second);
  weights_.erase(it);
  const auto levels = static_cast<std::int64_t>(top + 1);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < levels; ++j) {
    dec_[j]->remove(u, v);
    if (!directed_) dec_[j]->remove(v, u);
  }
}

bool LayeredSsbp::reached(std::size_t level, Vertex v) const {
  return mode_ == Mode::kIncremental ? inc_[level]->reached(v) : dec_[level]->reached(v);
}

std::optional<Weight> LayeredSsbp::value(Vertex v) const {
  if (v == s_) return kInf;
  // reached at lo (or lo = -1), not reached at hi (or hi = W).
  std::int64_t lo = -1;
  auto hi = static_cast<std::int64_t>(universe_.size());
  std::size_t probes = 0;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    ++probes;
    if (reached(static_cast<std::size_t>(mid), v)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  max_probes_ = std::max(max_probes_, probes);
  if (lo < 0) return std::nullopt;
  return universe_[static_cast<std::size_t>(lo)];
}

std::vector<std::optional<Weight>> LayeredSsbp::values() const {
  std::vector<std::optional<Weight>> res(n_);
  for (std::size_t v = 0; v < n_; ++v) res[v] = value(static_cast<Vertex>(v));
  return res;
}

DyadicSsbp::DyadicSsbp(std::size_t n, bool directed, Vertex s, double t, double g)
    : n_(n), directed_(directed), s_(s), g_(g) {
  if (t < 0 || t > 1) throw BadParameter("block exponent must lie in [0, 1]");
  block_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), t) - 1e-9)));
}

std::vector<std::pair<std::size_t, std::size_t>> DyadicSsbp::cover(std::size_t upto_blocks) {
  std::vector<std::pair<std::size_t, std::size_t>> res;
  std::size_t start = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::size_t len = std::size_t{1} << bit;
    if (upto_blocks & len) {
      res.emplace_back(start, start + len);
      start += len;
    }
  }
  return res;
}

const DyadicSsbp::Interval& DyadicSsbp::interval(std::size_t lo, std::size_t hi) const {
  return intervals_.at({lo, hi});
}

std::vector<Weight> DyadicSsbp::covered_row(Vertex x, std::size_t upto) const {
  std::vector<Weight> res(n_, kNegInf);
  for (auto [lo, hi] : cover(upto / block_)) {
    auto r = interval(lo, hi).ds->row(static_cast<std::size_t>(x));
    for (std::size_t v = 0; v < n_; ++v) res[v] = std::max(res[v], r[v]);
  }
  res[x] = kInf;
  return res;
}

std::vector<Weight> DyadicSsbp::covered_col(Vertex x, std::size_t upto) const {
  std::vector<Weight> res(n_, kNegInf);
  for (auto [lo, hi] : cover(upto / block_)) {
    auto c = interval(lo, hi).ds->col(static_cast<std::size_t>(x));
    for (std::size_t v = 0; v < n_; ++v) res[v] = std::max(res[v], c[v]);
  }
  res[x] = kInf;
  return res;
}

void DyadicSsbp::build(std::size_t lo, std::size_t hi) {
  const std::size_t t_lo = lo * block_, t_hi = hi * block_;
  std::vector<Vertex> touched;
  std::vector<const Edge*> raw;
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (arc_time_[a] <= t_lo || arc_time_[a] > t_hi) continue;
    raw.push_back(&arcs_[a]);
    touched.push_back(arcs_[a].u);
    touched.push_back(arcs_[a].v);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  const std::size_t k = touched.size();
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(touched.begin(), touched.end(), v) -
                                    touched.begin());
  };
  // Paths entirely before the interval, into and out of every touched vertex.
  IntMatrix into(n_, k, kNegInf), out(k, n_, kNegInf), mid(k, k, kNegInf);
  for (std::size_t a = 0; a < k; ++a) {
    auto col = covered_col(touched[a], t_lo);
    auto row = covered_row(touched[a], t_lo);
    for (std::size_t v = 0; v < n_; ++v) {
      into(v, a) = col[v];
      out(a, v) = row[v];
    }
    for (std::size_t b = 0; b < k; ++b) mid(a, b) = row[touched[b]];
  }
  for (const Edge* e : raw) {
    auto& cell = mid(idx(e->u), idx(e->v));
    cell = std::max(cell, e->w);
  }
  // Closure over touched vertices: paths of up to k - 1 hops.
  for (std::size_t hops = 1; hops + 1 < k; hops *= 2) mid = maxmin_naive(mid, mid, Backend::kParallel);
  IntMatrix left = maxmin_naive(into, mid, Backend::kParallel);
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.touched = touched;
  const double bexp = MaxMinDS::exponent_b(left);
  const double g = g_ < 0 ? bexp / 2 : std::min(g_, bexp);
  iv.ds = std::make_unique<MaxMinDS>(left, out, g);
  intervals_.emplace(std::make_pair(lo, hi), std::move(iv));
}

void DyadicSsbp::insert(Vertex u, Vertex v, Weight w) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_) {
    throw VertexOutOfRange("vertex out of range");
  }
  if (!present_.insert(edge_key(directed_, u, v)).second) throw EdgeExists("edge exists");
  ++updates_;
  arcs_.push_back({u, v, w});
  arc_time_.push_back(updates_);
  if (!directed_) {
    arcs_.push_back({v, u, w});
    arc_time_.push_back(updates_);
  }
  if (updates_ % block_ != 0) return;
  const std::size_t q = updates_ / block_;
  for (std::size_t len = 1; q % len == 0; len *= 2) build(q - len, q);
}

std::vector<std::optional<Weight>> DyadicSsbp::values() const {
  const std::size_t tau = (updates_ / block_) * block_;
  std::vector<Vertex> recent{s_};
  std::vector<const Edge*> raw;
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (arc_time_[a] <= tau) continue;
    raw.push_back(&arcs_[a]);
    recent.push_back(arcs_[a].u);
    recent.push_back(arcs_[a].v);
  }
  std::sort(recent.begin(), recent.end());
  recent.erase(std::unique(recent.begin(), recent.end()), recent.end());
  const std::size_t k = recent.size();
  std::vector<std::vector<Weight>> rows(k);
  for (std::size_t a = 0; a < k; ++a) rows[a] = covered_row(recent[a], tau);
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(recent.begin(), recent.end(), v) -
                                    recent.begin());
  };
  IntMatrix link(k, k, kNegInf);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) link(a, b) = rows[a][recent[b]];
  }
  for (const Edge* e : raw) {
    auto& cell = link(idx(e->u), idx(e->v));
    cell = std::max(cell, e->w);
  }
  // Widest paths from s over the recent vertices (dense Dijkstra).
  std::vector<Weight> cap(k, kNegInf);
  std::vector<bool> done(k, false);
  cap[idx(s_)] = kInf;
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = k;
    for (std::size_t a = 0; a < k; ++a) {
      if (!done[a] && cap[a] != kNegInf && (best == k || cap[a] > cap[best])) best = a;
    }
    if (best == k) break;
    done[best] = true;
    for (std::size_t b = 0; b < k; ++b) cap[b] = std::max(cap[b], std::min(cap[best], link(best, b)));
  }
  std::vector<std::optional<Weight>> res(n_);
  for (std::size_t v = 0; v < n_; ++v) {
    Weight best = kNegInf;
    for (std::size_t a = 0; a < k; ++a) best = std::max(best, std::min(cap[a], rows[a][v]));
    if (best != kNegInf) res[v] = best;
  }
  res[s_] = kInf;
  return res;
}

std::optional<Weight> DyadicSsbp::value(Vertex v) const { return values()[v]; }

}  // namespace dynpath
