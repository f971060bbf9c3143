#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dynpath/graph.hpp"
#include "dynpath/kernels.hpp"

namespace dynpath {

// Node-weighted distances: a path costs the sum of its vertex weights with
// both endpoints included, so d(v, v) = wt(v). Edge weights are ignored.
std::vector<std::optional<Weight>> static_nw_sssp(const DynamicGraph& g, Vertex s);
std::vector<std::vector<std::optional<Weight>>> static_nw_apsp(const DynamicGraph& g,
                                                               Backend be = Backend::kParallel);

// Incremental node-weighted shortest paths processed in batches of
// ceil(n^t) insertions. Distances d0 come from the graph as it stood at the
// start of the batch; a query stitches d0 segments with the edges inserted
// since then.
class BatchedNwSp {
 public:
  BatchedNwSp(std::size_t n, bool directed, std::vector<Weight> node_weights, Vertex s,
              double t = 0.5, const std::vector<Edge>& initial = {});

  void insert(Vertex u, Vertex v);
  void remove(Vertex u, Vertex v);

  std::vector<std::optional<Weight>> values();
  std::optional<Weight> value(Vertex target);

  std::size_t batch_size() const { return batch_; }
  std::size_t buffered() const { return buffer_.size(); }
  std::size_t rebuilds() const { return rebuilds_; }
  const DynamicGraph& graph() const { return graph_; }

  // Snapshot distance row from x, computed on first use in each batch.
  const std::vector<std::optional<Weight>>& snapshot_row(Vertex x);

 private:
  void rebuild();
  // Best distances to the tail copies of the buffered arcs.
  std::vector<std::optional<Weight>> stitch();

  std::size_t n_;
  Vertex s_;
  std::size_t batch_;
  DynamicGraph graph_;
  DynamicGraph snapshot_;
  std::vector<std::pair<Vertex, Vertex>> buffer_;  // arcs; an undirected edge gives two
  std::size_t inserted_ = 0;                       // insertions in this batch
  std::map<Vertex, std::vector<std::optional<Weight>>> rows_;
  std::size_t rebuilds_ = 0;
};

}  // namespace dynpath
