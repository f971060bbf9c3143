#include "dynpath/reachability.hpp"

#include <deque>
#include <memory>

namespace dynpath {

IncrementalSsr::IncrementalSsr(std::size_t n, Vertex source)
    : source_(source), out_(n), reached_(n, false) {
  reached_[source] = true;
}

Vertex IncrementalSsr::add_vertex() {
  out_.emplace_back();
  reached_.push_back(false);
  return static_cast<Vertex>(out_.size() - 1);
}

std::vector<Vertex> IncrementalSsr::insert(Vertex u, Vertex v) {
  ++inserted_;
  ++scanned_;
  out_[u].push_back(v);
  std::vector<Vertex> found;
  if (reached_[u] && !reached_[v]) visit_from(v, found);
  return found;
}

void IncrementalSsr::visit_from(Vertex v, std::vector<Vertex>& found) {
  std::vector<Vertex> stack{v};
  reached_[v] = true;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    found.push_back(x);
    if (on_reach_) on_reach_(x);
    for (std::size_t i = 0; i < out_[x].size(); ++i) {
      Vertex y = out_[x][i];
      ++scanned_;
      if (!reached_[y]) {
        reached_[y] = true;
        stack.push_back(y);
      }
    }
  }
}

DecrementalSsr::DecrementalSsr(std::size_t n, Vertex source,
                               const std::vector<std::pair<Vertex, Vertex>>& edges)
    : source_(source), initial_edges_(edges.size()), out_(n), in_(n), level_(n, kUnreached),
      parent_(n, -1) {
  for (const auto& [u, v] : edges) {
    out_[u].insert(v);
    in_[v].insert(u);
  }
  std::deque<Vertex> q{source};
  level_[source] = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (Vertex y : out_[x]) {
      ++work_;
      if (level_[y] == kUnreached) {
        level_[y] = level_[x] + 1;
        parent_[y] = x;
        q.push_back(y);
      }
    }
  }
}

std::vector<Vertex> DecrementalSsr::remove(Vertex u, Vertex v) {
  out_[u].erase(v);
  in_[v].erase(u);
  ++work_;
  std::vector<Vertex> lost;
  if (level_[v] != kUnreached && parent_[v] == u) recheck(v, lost);
  return lost;
}

void DecrementalSsr::recheck(Vertex start, std::vector<Vertex>& lost) {
  const auto cap = static_cast<std::int32_t>(level_.size());
  std::deque<Vertex> q{start};
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    if (x == source_ || level_[x] == kUnreached) continue;
    std::int32_t best = cap;
    Vertex best_parent = -1;
    for (Vertex w : in_[x]) {
      ++work_;
      if (level_[w] != kUnreached && level_[w] + 1 < best) {
        best = level_[w] + 1;
        best_parent = w;
      }
    }
    if (best == level_[x]) {
      parent_[x] = best_parent;
      continue;
    }
    // Levels are lower bounds on BFS distance, so best > level_[x] here.
    if (best >= cap) {
      level_[x] = kUnreached;
      parent_[x] = -1;
      lost.push_back(x);
      if (on_unreach_) on_unreach_(x);
    } else {
      level_[x] = best;
      parent_[x] = best_parent;
    }
    for (Vertex y : out_[x]) {
      ++work_;
      if (parent_[y] == x) q.push_back(y);
    }
  }
}

FullyDynamicStReach::FullyDynamicStReach(std::size_t n, Vertex s, Vertex t,
                                         StReachStrategy strategy)
    : n_(n), s_(s), t_(t), strategy_(strategy), out_(n) {}

void FullyDynamicStReach::insert(Vertex u, Vertex v) {
  ++inserts_;
  out_[u].insert(v);
  if (strategy_ == StReachStrategy::kIncrementalWithRebuild && !dirty_) inc_->insert(u, v);
}

void FullyDynamicStReach::remove(Vertex u, Vertex v) {
  ++deletes_;
  auto it = out_[u].find(v);
  if (it == out_[u].end()) throw EdgeAbsent("reachability edge absent");
  out_[u].erase(it);
  dirty_ = true;
}

void FullyDynamicStReach::rebuild() {
  inc_ = std::make_unique<IncrementalSsr>(n_, s_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (Vertex v : out_[u]) inc_->insert(static_cast<Vertex>(u), v);
  }
  dirty_ = false;
}

bool FullyDynamicStReach::query() {
  if (s_ == t_) return true;
  if (strategy_ == StReachStrategy::kIncrementalWithRebuild) {
    if (dirty_) rebuild();
    return inc_->reached(t_);
  }
  std::vector<bool> seen(n_, false);
  std::vector<Vertex> stack{s_};
  seen[s_] = true;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    if (x == t_) return true;
    for (Vertex y : out_[x]) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return false;
}

}  // namespace dynpath
