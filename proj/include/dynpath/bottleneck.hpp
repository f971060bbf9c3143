#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "dynpath/dominance.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/reachability.hpp"

namespace dynpath {

// Bottleneck (widest path) value: the largest minimum edge weight over s-v
// paths. b(s, s) = kInf; nullopt marks unreachable vertices.
std::vector<std::optional<Weight>> static_ssbp(const DynamicGraph& g, Vertex s);
std::vector<std::vector<std::optional<Weight>>> static_apbp(const DynamicGraph& g,
                                                             Backend be = Backend::kParallel);

// Undirected graphs only: answers read off a maximum spanning forest.
std::vector<std::optional<Weight>> mst_ssbp(const DynamicGraph& g, Vertex s);

// Partially dynamic s-t bottleneck on top of fully dynamic s-t reachability.
// Edges are loaded heaviest first; every edge is handed to the reachability
// structure at most once and removed from it at most once.
class ThresholdStBp {
 public:
  ThresholdStBp(std::size_t n, bool directed, Vertex s, Vertex t, Mode mode,
                const std::vector<Edge>& initial,
                StReachStrategy strategy = StReachStrategy::kRecomputeOnQuery);

  void insert(Vertex u, Vertex v, Weight w);
  void remove(Vertex u, Vertex v);
  std::optional<Weight> value() const;

  std::uint64_t reach_inserts() const { return reach_.inserts(); }
  std::uint64_t reach_deletes() const { return reach_.deletes(); }
  // Edges handed to / withdrawn from the reachability structure; an undirected
  // edge counts once although it becomes two arcs.
  std::uint64_t loads() const { return loads_; }
  std::uint64_t unloads() const { return unloads_; }
  std::size_t edges_seen() const { return edges_.size(); }

 private:
  struct Item {
    Vertex u;
    Vertex v;
    Weight w;
    bool loaded = false;
    bool alive = true;
  };
  // Heaviest first, ties by edge id.
  using Key = std::pair<Weight, std::size_t>;

  void load(std::size_t id);
  void unload(std::size_t id);
  void advance();
  void shrink();

  bool directed_;
  std::uint64_t loads_ = 0;
  std::uint64_t unloads_ = 0;
  Vertex s_;
  Vertex t_;
  Mode mode_;
  FullyDynamicStReach reach_;
  std::vector<Item> edges_;
  std::map<std::pair<Vertex, Vertex>, std::size_t> ids_;
  std::vector<std::size_t> order_;  // decremental: edge ids, heaviest first
  std::size_t cursor_ = 0;
  std::set<Key> loaded_;            // incremental: loaded edges, lightest first
  std::optional<Weight> answer_;
};

// Partially dynamic SSBP for a fixed weight universe: one reachability
// structure per distinct weight w over the edges of weight >= w, and a binary
// search over them per query.
class LayeredSsbp {
 public:
  LayeredSsbp(std::size_t n, bool directed, Vertex s, Mode mode, const std::vector<Edge>& initial,
              std::vector<Weight> universe);

  void insert(Vertex u, Vertex v, Weight w);
  void remove(Vertex u, Vertex v);
  std::optional<Weight> value(Vertex v) const;
  std::vector<std::optional<Weight>> values() const;

  std::size_t universe_size() const { return universe_.size(); }
  std::size_t max_probes() const { return max_probes_; }

 private:
  std::size_t level_of(Weight w) const;
  bool reached(std::size_t level, Vertex v) const;

  std::size_t n_;
  bool directed_;
  Vertex s_;
  Mode mode_;
  std::vector<Weight> universe_;  // ascending
  std::map<std::pair<Vertex, Vertex>, Weight> weights_;
  std::vector<std::unique_ptr<IncrementalSsr>> inc_;
  std::vector<std::unique_ptr<DecrementalSsr>> dec_;
  mutable std::size_t max_probes_ = 0;
};

// Incremental SSBP via dyadic intervals of update time. Updates are numbered
// 1, 2, ...; after every `block` updates the intervals ending there get a
// (max, min) structure answering "best path whose latest edge lies in the
// interval" for all pairs. Queries stitch those with the recent raw edges.
class DyadicSsbp {
 public:
  // block = ceil(n^t); g is forwarded to the (max, min) structures.
  DyadicSsbp(std::size_t n, bool directed, Vertex s, double t = 0.5, double g = -1);

  void insert(Vertex u, Vertex v, Weight w);
  std::vector<std::optional<Weight>> values() const;
  std::optional<Weight> value(Vertex v) const;

  std::size_t block() const { return block_; }
  std::size_t intervals_built() const { return intervals_.size(); }

  // Best value over paths whose edges all have update index <= upto, where
  // upto must be a multiple of the block size; computed from the interval
  // structures covering (0, upto]. Row from x (or column into x).
  std::vector<Weight> covered_row(Vertex x, std::size_t upto) const;
  std::vector<Weight> covered_col(Vertex x, std::size_t upto) const;
  // Intervals (in blocks) covering (0, upto_blocks].
  static std::vector<std::pair<std::size_t, std::size_t>> cover(std::size_t upto_blocks);

 private:
  struct Interval {
    std::size_t lo;  // in blocks, exclusive
    std::size_t hi;  // in blocks, inclusive
    std::vector<Vertex> touched;
    std::unique_ptr<MaxMinDS> ds;  // rows: from vertex, cols: into vertex
  };

  void build(std::size_t lo_blocks, std::size_t hi_blocks);
  const Interval& interval(std::size_t lo, std::size_t hi) const;

  std::size_t n_;
  bool directed_;
  Vertex s_;
  double g_;
  std::size_t block_;
  std::vector<Edge> arcs_;  // in update order; undirected edges give two arcs with one index
  std::vector<std::size_t> arc_time_;
  std::size_t updates_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Interval> intervals_;
  std::set<std::pair<Vertex, Vertex>> present_;
};

}  // namespace dynpath
