#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynpath/graph.hpp"

namespace dynpath {

enum class Problem {
  kStsp,
  kSssp,
  kNwStsp,
  kNwSssp,
  kStbp,
  kSsbp,
  kStea,
  kSsea,
  kStReach,
};

std::string to_string(Problem p);
// Distance, node-weighted distance, bottleneck, arrival and reachability
// problems each accept only their own query kinds.
bool query_matches_problem(QueryKind k, Problem p);
std::optional<Problem> problem_from_string(const std::string& s);

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(std::size_t op_index, const std::string& what)
      : Error("op " + std::to_string(op_index) + ": " + what), op_index_(op_index) {}
  std::size_t op_index() const { return op_index_; }

 private:
  std::size_t op_index_;
};

struct TraceHeader {
  std::size_t n = 0;
  bool directed = true;
  Problem problem = Problem::kStsp;
  Vertex source = 0;
  std::optional<Vertex> target;
  Mode mode = Mode::kFully;
  std::vector<Weight> node_weights;  // empty when the graph is edge-weighted
  std::vector<Edge> initial_edges;   // graph present before the first op

  bool operator==(const TraceHeader&) const = default;
};

struct UpdateTrace {
  TraceHeader header;
  std::vector<UpdateOp> ops;

  std::size_t update_count() const;
  std::size_t query_count() const;
  bool operator==(const UpdateTrace&) const = default;
};

// One query answer: a scalar (nullopt = unreachable / infinite distance) or a
// per-vertex array.
using Scalar = std::optional<Weight>;
using Answer = std::variant<Scalar, std::vector<Scalar>>;

struct TraceResult {
  std::vector<Answer> answers;
  bool operator==(const TraceResult&) const = default;
};

// Graph described by the header, in the header's mode.
DynamicGraph initial_graph(const TraceHeader& h);

// Replays every op; throws InvariantViolation on the first illegal one.
void validate(const UpdateTrace& t);

UpdateTrace load_trace(std::istream& in);
UpdateTrace load_trace_file(const std::string& path);
void save_trace(const UpdateTrace& t, std::ostream& out);
void save_trace_file(const UpdateTrace& t, const std::string& path);

TraceResult load_result(std::istream& in);
TraceResult load_result_file(const std::string& path);
void save_result(const TraceResult& r, std::ostream& out);
void save_result_file(const TraceResult& r, const std::string& path);

// Replaces each maximal run of updates between queries by the net change on
// the edge set. Query answers are unchanged.
UpdateTrace compact_trace(const UpdateTrace& t);

// Same trace over n_target vertices; the added vertices stay isolated (node
// weight 0 when the trace is node-weighted). Throws BadParameter when
// n_target < t.header.n.
UpdateTrace sparsify_trace(const UpdateTrace& t, std::size_t n_target);

// Exact reversal: the initial graph becomes the final graph, updates are
// inverted and replayed backwards, queries keep their relative order reversed.
// Returns the new trace; `order` (if given) receives, for each query of the
// reversed trace, the index of the corresponding query in `t`.
UpdateTrace reverse_trace(const UpdateTrace& t, std::vector<std::size_t>* order = nullptr);

std::string answer_to_json(const Answer& a);

}  // namespace dynpath
