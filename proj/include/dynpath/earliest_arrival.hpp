#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "dynpath/graph.hpp"
#include "dynpath/reachability.hpp"

namespace dynpath {

// Earliest arrival over non-decreasing itineraries: the arrival time at v is
// the weight of the last edge; a(s, s) = 0; nullopt marks unreachable.
std::vector<std::optional<Weight>> static_ssea(const DynamicGraph& g, Vertex s);

// Vertex layout of the chain gadget for a graph with n vertices and edges
// numbered in insertion order: vertex 0 is the source copy, edge e owns
// p(e) = 1 + 2e and q(e) = 2 + 2e.
struct ChainGadgetLayout {
  static Vertex p(std::size_t e) { return static_cast<Vertex>(1 + 2 * e); }
  static Vertex q(std::size_t e) { return static_cast<Vertex>(2 + 2 * e); }
};

// Static chain gadget: returns its arcs for the given edge list.
std::vector<std::pair<Vertex, Vertex>> chain_gadget_arcs(std::size_t n, Vertex s,
                                                         const std::vector<Edge>& edges);

// Single-source earliest arrival under edge insertions or deletions, reduced
// to single-source reachability on the chain gadget.
class DynamicSsea {
 public:
  // Incremental: starts from `initial` and accepts inserts.
  // Decremental: the gadget is built over `initial` and accepts deletes.
  DynamicSsea(std::size_t n, bool directed, Vertex s, Mode mode, const std::vector<Edge>& initial);

  void insert(Vertex u, Vertex v, Weight w);
  void remove(Vertex u, Vertex v);

  std::optional<Weight> arrival(Vertex v) const;
  std::vector<std::optional<Weight>> arrivals() const;

  std::uint64_t gadget_edges() const { return gadget_edges_; }
  std::uint64_t reach_work() const;
  std::size_t graph_edges() const { return edge_ids_.size(); }

 private:
  // Chain order at a vertex: by weight, incoming copies before outgoing, then edge id.
  using ChainKey = std::tuple<Weight, int, std::size_t>;
  struct Arc {
    Vertex tail;
    Vertex head;
    Weight w;
    bool alive;
  };

  void add_arc(Vertex u, Vertex v, Weight w);
  void add_gadget_edge(Vertex a, Vertex b);
  void splice(Vertex at, const ChainKey& key, Vertex node);
  void on_p_reached(Vertex gadget_vertex);
  void on_p_lost(Vertex gadget_vertex);

  std::size_t n_;
  bool directed_;
  Vertex s_;
  Mode mode_;
  std::vector<Arc> arcs_;
  std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> edge_ids_;
  std::vector<std::map<ChainKey, Vertex>> chain_;
  std::vector<std::multiset<Weight>> in_arrivals_;
  std::vector<bool> p_counted_;
  std::unique_ptr<IncrementalSsr> inc_;
  std::unique_ptr<DecrementalSsr> dec_;
  std::uint64_t gadget_edges_ = 0;
};

}  // namespace dynpath
