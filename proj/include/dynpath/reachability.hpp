#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "dynpath/graph.hpp"

namespace dynpath {

// Single-source reachability under edge insertions. Each edge is scanned at
// most twice over the structure's lifetime: once on insertion and once when
// its tail first becomes reachable.
class IncrementalSsr {
 public:
  IncrementalSsr(std::size_t n, Vertex source);

  Vertex add_vertex();
  std::size_t size() const { return out_.size(); }

  // Returns the vertices that became reachable, in discovery order.
  std::vector<Vertex> insert(Vertex u, Vertex v);
  bool reached(Vertex v) const { return reached_[v]; }

  void set_on_reach(std::function<void(Vertex)> f) { on_reach_ = std::move(f); }
  std::uint64_t edges_scanned() const { return scanned_; }
  std::uint64_t edges_inserted() const { return inserted_; }

 private:
  void visit_from(Vertex v, std::vector<Vertex>& found);

  Vertex source_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<bool> reached_;
  std::function<void(Vertex)> on_reach_;
  std::uint64_t scanned_ = 0;
  std::uint64_t inserted_ = 0;
};

// Single-source reachability under edge deletions, kept as a BFS layering
// whose levels only grow. A vertex whose level would exceed n - 1 is dropped.
class DecrementalSsr {
 public:
  static constexpr std::int32_t kUnreached = -1;

  DecrementalSsr(std::size_t n, Vertex source, const std::vector<std::pair<Vertex, Vertex>>& edges);

  // Returns the vertices that became unreachable.
  std::vector<Vertex> remove(Vertex u, Vertex v);
  bool reached(Vertex v) const { return level_[v] != kUnreached; }
  std::int32_t level(Vertex v) const { return level_[v]; }
  std::size_t size() const { return level_.size(); }

  void set_on_unreach(std::function<void(Vertex)> f) { on_unreach_ = std::move(f); }
  std::uint64_t work() const { return work_; }
  std::size_t initial_edges() const { return initial_edges_; }

 private:
  void recheck(Vertex start, std::vector<Vertex>& lost);

  Vertex source_;
  std::size_t initial_edges_;
  std::vector<std::set<Vertex>> out_;
  std::vector<std::set<Vertex>> in_;
  std::vector<std::int32_t> level_;
  std::vector<Vertex> parent_;
  std::function<void(Vertex)> on_unreach_;
  std::uint64_t work_ = 0;
};

enum class StReachStrategy { kRecomputeOnQuery, kIncrementalWithRebuild };

// Fully dynamic s-t reachability used as a black box by the threshold
// bottleneck engine. Counts every insert and delete it receives.
class FullyDynamicStReach {
 public:
  FullyDynamicStReach(std::size_t n, Vertex s, Vertex t,
                      StReachStrategy strategy = StReachStrategy::kRecomputeOnQuery);

  void insert(Vertex u, Vertex v);
  void remove(Vertex u, Vertex v);
  bool query();

  std::uint64_t inserts() const { return inserts_; }
  std::uint64_t deletes() const { return deletes_; }

 private:
  void rebuild();

  std::size_t n_;
  Vertex s_;
  Vertex t_;
  StReachStrategy strategy_;
  std::vector<std::multiset<Vertex>> out_;
  std::unique_ptr<IncrementalSsr> inc_;
  bool dirty_ = true;
  std::uint64_t inserts_ = 0;
  std::uint64_t deletes_ = 0;
};

}  // namespace dynpath
