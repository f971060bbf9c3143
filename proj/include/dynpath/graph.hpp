#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace dynpath {

using Vertex = std::int32_t;
using Weight = std::int64_t;

// +inf is a legal edge weight for bottleneck problems; -inf marks "no path".
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();
inline constexpr Weight kNegInf = std::numeric_limits<Weight>::min();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EdgeExists : public Error {
 public:
  using Error::Error;
};
class EdgeAbsent : public Error {
 public:
  using Error::Error;
};
class MonotonicityViolation : public Error {
 public:
  using Error::Error;
};
class VertexOutOfRange : public Error {
 public:
  using Error::Error;
};
class Unsupported : public Error {
 public:
  using Error::Error;
};
class BadParameter : public Error {
 public:
  using Error::Error;
};
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};
class OverflowRisk : public Error {
 public:
  using Error::Error;
};

enum class Mode { kIncremental, kDecremental, kFully };

enum class QueryKind {
  kStDist,
  kSsspAll,
  kStBottleneck,
  kSsbpAll,
  kStArrival,
  kSseaAll,
  kStReach,
};

struct InsertEdge {
  Vertex u;
  Vertex v;
  Weight w;
  bool operator==(const InsertEdge&) const = default;
};
struct DeleteEdge {
  Vertex u;
  Vertex v;
  bool operator==(const DeleteEdge&) const = default;
};
struct SetWeight {
  Vertex u;
  Vertex v;
  Weight w;
  bool operator==(const SetWeight&) const = default;
};
struct Query {
  QueryKind kind;
  bool operator==(const Query&) const = default;
};

using UpdateOp = std::variant<InsertEdge, DeleteEdge, SetWeight, Query>;

inline bool is_query(const UpdateOp& op) { return std::holds_alternative<Query>(op); }

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;
  bool operator==(const Edge&) const = default;
};

// Directed or undirected graph on a fixed vertex set [0, n).
// Undirected edges are stored once under (min, max) and exposed as two arcs.
class DynamicGraph {
 public:
  DynamicGraph() = default;
  DynamicGraph(std::size_t n, bool directed, Mode mode = Mode::kFully);

  std::size_t n() const { return out_.size(); }
  bool directed() const { return directed_; }
  Mode mode() const { return mode_; }
  // Switching mode does not touch the edge set; used to freeze an initial graph.
  void set_mode(Mode m) { mode_ = m; }
  std::uint64_t version() const { return version_; }
  std::size_t edge_count() const { return edge_count_; }

  void insert_edge(Vertex u, Vertex v, Weight w);
  void delete_edge(Vertex u, Vertex v);
  void set_weight(Vertex u, Vertex v, Weight w);
  // Applies a non-query op; queries are ignored.
  void apply(const UpdateOp& op);

  bool has_edge(Vertex u, Vertex v) const;
  std::optional<Weight> weight(Vertex u, Vertex v) const;

  // Arcs leaving u (both directions for undirected edges).
  const std::map<Vertex, Weight>& out(Vertex u) const { return out_[u]; }
  const std::map<Vertex, Weight>& in(Vertex u) const { return directed_ ? in_[u] : out_[u]; }

  // Canonical edge list, sorted by (u, v); undirected edges appear once with u <= v.
  std::vector<Edge> edges() const;

  bool has_node_weights() const { return !node_weights_.empty(); }
  const std::vector<Weight>& node_weights() const { return node_weights_; }
  void set_node_weights(std::vector<Weight> w);
  Weight node_weight(Vertex v) const { return node_weights_.empty() ? 0 : node_weights_[v]; }

 private:
  void check_vertex(Vertex v) const;
  void link(Vertex u, Vertex v, Weight w);
  void unlink(Vertex u, Vertex v);

  bool directed_ = true;
  Mode mode_ = Mode::kFully;
  std::uint64_t version_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::map<Vertex, Weight>> out_;
  std::vector<std::map<Vertex, Weight>> in_;
  std::vector<Weight> node_weights_;
};

std::string to_string(QueryKind k);
std::optional<QueryKind> query_kind_from_string(const std::string& s);
std::string to_string(Mode m);
std::optional<Mode> mode_from_string(const std::string& s);

// Edge-weighted Dijkstra; nullopt marks unreachable vertices.
std::vector<std::optional<Weight>> static_sssp(const DynamicGraph& g, Vertex s);

// Unweighted BFS reachability.
std::vector<bool> static_reach(const DynamicGraph& g, Vertex s);

}  // namespace dynpath
