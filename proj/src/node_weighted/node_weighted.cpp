#include "dynpath/node_weighted.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

namespace dynpath {

std::vector<std::optional<Weight>> static_nw_sssp(const DynamicGraph& g, Vertex s) {
  std::vector<std::optional<Weight>> d(g.n());
  using Item = std::pair<Weight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[s] = g.node_weight(s);
  pq.push({*d[s], s});
  while (!pq.empty()) {
    auto [dist, v] = pq.top();
    pq.pop();
    if (dist != *d[v]) continue;
    for (const auto& [w, unused] : g.out(v)) {
      (void)unused;
      const Weight nd = dist + g.node_weight(w);
      if (!d[w] || nd < *d[w]) {
        d[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return d;
}

std::vector<std::vector<std::optional<Weight>>> static_nw_apsp(const DynamicGraph& g, Backend be) {
  std::vector<std::vector<std::optional<Weight>>> res(g.n());
  const auto n = static_cast<std::int64_t>(g.n());
#pragma omp parallel for schedule(dynamic, 1) if (be == Backend::kParallel)
  for (std::int64_t s = 0; s < n; ++s) res[s] = static_nw_sssp(g, static_cast<Vertex>(s));
  return res;
}

BatchedNwSp::BatchedNwSp(std::size_t n, bool directed, std::vector<Weight> node_weights, Vertex s,
                         double t, const std::vector<Edge>& initial)
    : n_(n), s_(s), graph_(n, directed, Mode::kIncremental) {
  if (node_weights.size() != n) throw BadParameter("one node weight per vertex required");
  for (Weight w : node_weights) {
    if (w < 0) throw BadParameter("node weights must be non-negative");
  }
  if (t < 0 || t > 1) throw BadParameter("batch exponent must lie in [0, 1]");
  if (s < 0 || static_cast<std::size_t>(s) >= n) throw VertexOutOfRange("source out of range");
  batch_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), t) - 1e-9)));
  graph_.set_node_weights(std::move(node_weights));
  for (const auto& e : initial) graph_.insert_edge(e.u, e.v, e.w);
  rebuild();
}

void BatchedNwSp::rebuild() {
  snapshot_ = graph_;
  buffer_.clear();
  rows_.clear();
  inserted_ = 0;
  ++rebuilds_;
}

void BatchedNwSp::insert(Vertex u, Vertex v) {
  graph_.insert_edge(u, v, 0);
  buffer_.emplace_back(u, v);
  if (!graph_.directed()) buffer_.emplace_back(v, u);
  if (++inserted_ >= batch_) rebuild();
}

void BatchedNwSp::remove(Vertex, Vertex) {
  throw MonotonicityViolation("batched node-weighted paths are insert-only");
}

const std::vector<std::optional<Weight>>& BatchedNwSp::snapshot_row(Vertex x) {
  auto it = rows_.find(x);
  if (it == rows_.end()) it = rows_.emplace(x, static_nw_sssp(snapshot_, x)).first;
  return it->second;
}

std::vector<std::optional<Weight>> BatchedNwSp::stitch() {
  const std::size_t k = buffer_.size();
  std::vector<Vertex> sources{s_};
  for (auto [u, v] : buffer_) sources.push_back(v);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<Vertex> missing;
  for (Vertex x : sources) {
    if (!rows_.count(x)) missing.push_back(x);
  }
  std::vector<std::vector<std::optional<Weight>>> fresh(missing.size());
  const auto miss = static_cast<std::int64_t>(missing.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < miss; ++i) fresh[i] = static_nw_sssp(snapshot_, missing[i]);
  for (std::size_t i = 0; i < missing.size(); ++i) rows_.emplace(missing[i], std::move(fresh[i]));

  // Layer nodes: tail copy i reaches head copy i at no cost, and head copy i
  // reaches tail copy j at cost d0(v_i, u_j). Dense Dijkstra over tail copies.
  std::vector<std::optional<Weight>> tail(k);
  std::vector<bool> done(k, false);
  const auto& from_s = rows_.at(s_);
  for (std::size_t i = 0; i < k; ++i) tail[i] = from_s[buffer_[i].first];
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!done[i] && tail[i] && (best == k || *tail[i] < *tail[best])) best = i;
    }
    if (best == k) break;
    done[best] = true;
    const auto& row = rows_.at(buffer_[best].second);
    for (std::size_t j = 0; j < k; ++j) {
      const auto& seg = row[buffer_[j].first];
      if (!seg) continue;
      const Weight c = *tail[best] + *seg;
      if (!tail[j] || c < *tail[j]) tail[j] = c;
    }
  }
  return tail;
}

std::vector<std::optional<Weight>> BatchedNwSp::values() {
  auto tail = stitch();
  std::vector<std::optional<Weight>> res = rows_.at(s_);
  for (std::size_t i = 0; i < buffer_.size(); ++i) {
    if (!tail[i]) continue;
    const auto& row = rows_.at(buffer_[i].second);
    for (std::size_t v = 0; v < n_; ++v) {
      if (!row[v]) continue;
      const Weight c = *tail[i] + *row[v];
      if (!res[v] || c < *res[v]) res[v] = c;
    }
  }
  return res;
}

std::optional<Weight> BatchedNwSp::value(Vertex target) {
  auto tail = stitch();
  std::optional<Weight> res = rows_.at(s_)[target];
  for (std::size_t i = 0; i < buffer_.size(); ++i) {
    const auto& seg = rows_.at(buffer_[i].second)[target];
    if (!tail[i] || !seg) continue;
    const Weight c = *tail[i] + *seg;
    if (!res || c < *res) res = c;
  }
  return res;
}

}  // namespace dynpath
