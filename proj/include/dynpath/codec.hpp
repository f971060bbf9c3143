#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dynpath/graph.hpp"
#include "dynpath/matrix.hpp"

namespace dynpath {

class DuplicateItem : public Error {
 public:
  using Error::Error;
};
class AbsentItem : public Error {
 public:
  using Error::Error;
};
class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};
class SizeMismatch : public Error {
 public:
  using Error::Error;
};

// Online list labelling: distinct items kept in sorted order inside an array
// with gaps, so that an item's slot can serve as an order-preserving integer
// label. Windows of a slot tree are rebalanced under density thresholds.
class ListLabeller {
 public:
  explicit ListLabeller(std::size_t initial_capacity = 8);

  // Both return the items whose slot changed (excluding the inserted one).
  std::vector<Weight> insert(Weight item);
  std::vector<Weight> erase(Weight item);

  bool contains(Weight item) const { return slot_of_.count(item) != 0; }
  std::size_t label(Weight item) const;  // slot + 1
  Weight item_at(std::size_t label) const;
  std::size_t size() const { return slot_of_.size(); }
  std::size_t capacity() const { return slots_.size(); }
  std::uint64_t moves() const { return moves_; }
  std::vector<Weight> items() const;  // in slot order

  // Moves are bounded by c * t * log2(t)^2 over t operations.
  static constexpr double kMoveConstant = 1.0;

 private:
  std::size_t segment() const;
  double upper_density(std::size_t window) const;
  void spread(std::size_t lo, std::size_t len, std::vector<Weight> items, std::vector<Weight>& moved);
  void resize(std::size_t capacity, std::vector<Weight>& moved);

  std::vector<std::optional<Weight>> slots_;
  std::map<Weight, std::size_t> slot_of_;
  std::uint64_t moves_ = 0;
};

// Path weights as multisets of edge labels in [1, L], L = 2n^2, stored in
// persistent segment trees. A multiset (a_i) stands for sum a_i M^(L - i):
// smaller labels are more significant. Every subtree carries an identifying
// number equal for equal count sub-arrays.
enum class Order { kLess, kEqual, kGreater };

class PathWeightCodec {
 public:
  struct Handle {
    std::uint32_t node = 0;
    std::size_t range = 0;
    bool operator==(const Handle&) const = default;
  };

  explicit PathWeightCodec(std::size_t n);
  // Label range given directly.
  static PathWeightCodec with_range(std::size_t labels);

  Handle empty() const { return {zero_root_, range_}; }
  Handle concat_edge(Handle h, std::size_t label);
  Order compare(Handle a, Handle b) const;
  // Smallest label present; nullopt for the empty multiset.
  std::optional<std::size_t> first_nonzero(Handle h) const;
  std::vector<std::uint32_t> counts(Handle h) const;  // index 0 is label 1
  std::int64_t id(Handle h) const { return nodes_[h.node].id; }

  std::size_t range() const { return range_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t last_allocated() const { return last_allocated_; }
  std::size_t max_allocated() const { return max_allocated_; }

 private:
  struct Node {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t count = 0;  // leaves only
    std::int64_t id = 0;
  };

  PathWeightCodec() = default;
  void init(std::size_t labels);
  std::int64_t identify(std::int64_t a, std::int64_t b);
  std::uint32_t make_zero(std::size_t len);
  std::uint32_t bump(std::uint32_t node, std::size_t lo, std::size_t hi, std::size_t label);

  std::size_t range_ = 0;
  std::vector<Node> nodes_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> ids_;
  std::map<std::size_t, std::uint32_t> zero_by_len_;
  std::uint32_t zero_root_ = 0;
  std::size_t last_allocated_ = 0;
  std::size_t max_allocated_ = 0;
};

// Widest paths from s over a label matrix (kNegInf = no arc) by Dijkstra on
// encoded path weights: the lexicographically lightest path maximizes its
// smallest label. Returns that label per vertex; s gets kInf.
std::vector<std::optional<Weight>> codec_widest(const IntMatrix& labels, Vertex s,
                                                PathWeightCodec& codec);

// Reference fully dynamic APBP: after each update, weights are relabelled
// through a ListLabeller and the (max, min) closure of the label matrix is
// recomputed. One matrix per update; entries are the original weights.
struct ApbpSnapshot {
  std::vector<std::vector<std::optional<Weight>>> b;
  IntMatrix labels;  // label matrix the closure was taken over
};
std::vector<ApbpSnapshot> fd_apbp_reference(std::size_t n, bool directed,
                                            const std::vector<Edge>& initial,
                                            const std::vector<UpdateOp>& updates,
                                            bool cross_check = false);

}  // namespace dynpath
