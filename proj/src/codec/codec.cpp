#include "dynpath/codec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dynpath/dominance.hpp"

namespace dynpath {

ListLabeller::ListLabeller(std::size_t initial_capacity)
    : slots_(std::bit_ceil(std::max<std::size_t>(8, initial_capacity))) {}

std::size_t ListLabeller::segment() const {
  const auto lg = static_cast<std::size_t>(std::bit_width(slots_.size()) - 1);
  return std::bit_floor(std::max<std::size_t>(1, lg));
}

double ListLabeller::upper_density(std::size_t window) const {
  // 1 at the leaves, 1/2 at the root.
  const auto height = std::bit_width(slots_.size() / segment()) - 1;
  if (height == 0) return 0.5;
  const auto level = std::bit_width(window / segment()) - 1;
  return 1.0 - 0.5 * static_cast<double>(level) / static_cast<double>(height);
}

void ListLabeller::spread(std::size_t lo, std::size_t len, std::vector<Weight> items,
                          std::vector<Weight>& moved) {
  for (std::size_t i = lo; i < lo + len; ++i) slots_[i].reset();
  const std::size_t k = items.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t slot = lo + i * len / k;
    slots_[slot] = items[i];
    auto it = slot_of_.find(items[i]);
    if (it == slot_of_.end()) {
      slot_of_.emplace(items[i], slot);
    } else if (it->second != slot) {
      it->second = slot;
      moved.push_back(items[i]);
    }
  }
}

void ListLabeller::resize(std::size_t capacity, std::vector<Weight>& moved) {
  std::vector<Weight> all = items();
  slots_.assign(capacity, std::nullopt);
  spread(0, capacity, std::move(all), moved);
}

std::vector<Weight> ListLabeller::insert(Weight item) {
  if (contains(item)) throw DuplicateItem("item already labelled");
  std::vector<Weight> moved;
  if (2 * (size() + 1) > capacity()) resize(2 * capacity(), moved);
  auto it = slot_of_.lower_bound(item);
  const std::size_t anchor = it == slot_of_.begin() ? 0 : std::prev(it)->second;
  for (std::size_t len = segment(); len <= capacity(); len *= 2) {
    const std::size_t lo = anchor / len * len;
    std::vector<Weight> window;
    for (std::size_t i = lo; i < lo + len; ++i) {
      if (slots_[i]) window.push_back(*slots_[i]);
    }
    if (static_cast<double>(window.size() + 1) > upper_density(len) * static_cast<double>(len)) {
      continue;
    }
    window.insert(std::upper_bound(window.begin(), window.end(), item), item);
    spread(lo, len, std::move(window), moved);
    break;
  }
  moves_ += moved.size();
  return moved;
}

std::vector<Weight> ListLabeller::erase(Weight item) {
  auto it = slot_of_.find(item);
  if (it == slot_of_.end()) throw AbsentItem("item not labelled");
  slots_[it->second].reset();
  slot_of_.erase(it);
  std::vector<Weight> moved;
  if (capacity() > 8 && 8 * size() < capacity()) resize(capacity() / 2, moved);
  moves_ += moved.size();
  return moved;
}

std::size_t ListLabeller::label(Weight item) const {
  auto it = slot_of_.find(item);
  if (it == slot_of_.end()) throw AbsentItem("item not labelled");
  return it->second + 1;
}

Weight ListLabeller::item_at(std::size_t label) const {
  if (label == 0 || label > slots_.size() || !slots_[label - 1]) throw AbsentItem("empty slot");
  return *slots_[label - 1];
}

std::vector<Weight> ListLabeller::items() const {
  std::vector<Weight> res;
  res.reserve(size());
  for (const auto& s : slots_) {
    if (s) res.push_back(*s);
  }
  return res;
}

PathWeightCodec::PathWeightCodec(std::size_t n) { init(std::max<std::size_t>(1, 2 * n * n)); }

PathWeightCodec PathWeightCodec::with_range(std::size_t labels) {
  if (labels == 0) throw BadParameter("label range must be positive");
  PathWeightCodec c;
  c.init(labels);
  return c;
}

void PathWeightCodec::init(std::size_t labels) {
  range_ = labels;
  zero_root_ = make_zero(labels);
}

std::int64_t PathWeightCodec::identify(std::int64_t a, std::int64_t b) {
  auto [it, fresh] = ids_.emplace(std::make_pair(a, b), static_cast<std::int64_t>(ids_.size()));
  return it->second;
}

std::uint32_t PathWeightCodec::make_zero(std::size_t len) {
  if (auto it = zero_by_len_.find(len); it != zero_by_len_.end()) return it->second;
  Node node;
  if (len == 1) {
    node.id = identify(-1, 0);
  } else {
    node.left = make_zero((len + 1) / 2);
    node.right = make_zero(len / 2);
    node.id = identify(nodes_[node.left].id, nodes_[node.right].id);
  }
  nodes_.push_back(node);
  const auto idx = static_cast<std::uint32_t>(nodes_.size() - 1);
  zero_by_len_[len] = idx;
  return idx;
}

std::uint32_t PathWeightCodec::bump(std::uint32_t node, std::size_t lo, std::size_t hi,
                                    std::size_t label) {
  Node copy = nodes_[node];
  if (lo == hi) {
    ++copy.count;
    copy.id = identify(-1, copy.count);
  } else {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (label <= mid) {
      copy.left = bump(copy.left, lo, mid, label);
    } else {
      copy.right = bump(copy.right, mid + 1, hi, label);
    }
    copy.id = identify(nodes_[copy.left].id, nodes_[copy.right].id);
  }
  nodes_.push_back(copy);
  ++last_allocated_;
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

PathWeightCodec::Handle PathWeightCodec::concat_edge(Handle h, std::size_t label) {
  if (h.range != range_) throw SizeMismatch("handle from a codec of another size");
  if (label < 1 || label > range_) throw LabelOutOfRange("label outside [1, range]");
  last_allocated_ = 0;
  const std::uint32_t root = bump(h.node, 1, range_, label);
  max_allocated_ = std::max(max_allocated_, last_allocated_);
  return {root, range_};
}

Order PathWeightCodec::compare(Handle a, Handle b) const {
  if (a.range != range_ || b.range != range_) throw SizeMismatch("handles differ in size");
  std::uint32_t x = a.node, y = b.node;
  std::size_t lo = 1, hi = range_;
  while (nodes_[x].id != nodes_[y].id) {
    if (lo == hi) return nodes_[x].count > nodes_[y].count ? Order::kGreater : Order::kLess;
    const std::size_t mid = lo + (hi - lo) / 2;
    if (nodes_[nodes_[x].left].id != nodes_[nodes_[y].left].id) {
      x = nodes_[x].left;
      y = nodes_[y].left;
      hi = mid;
    } else {
      x = nodes_[x].right;
      y = nodes_[y].right;
      lo = mid + 1;
    }
  }
  return Order::kEqual;
}

std::optional<std::size_t> PathWeightCodec::first_nonzero(Handle h) const {
  std::uint32_t x = h.node;
  if (nodes_[x].id == nodes_[zero_root_].id) return std::nullopt;
  std::size_t lo = 1, hi = range_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::uint32_t zero_left = zero_by_len_.at(mid - lo + 1);
    if (nodes_[nodes_[x].left].id != nodes_[zero_left].id) {
      x = nodes_[x].left;
      hi = mid;
    } else {
      x = nodes_[x].right;
      lo = mid + 1;
    }
  }
  return lo;
}

std::vector<std::uint32_t> PathWeightCodec::counts(Handle h) const {
  std::vector<std::uint32_t> res(range_, 0);
  struct Frame {
    std::uint32_t node;
    std::size_t lo, hi;
  };
  std::vector<Frame> stack{{h.node, 1, range_}};
  while (!stack.empty()) {
    auto [x, lo, hi] = stack.back();
    stack.pop_back();
    if (lo == hi) {
      res[lo - 1] = nodes_[x].count;
      continue;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    stack.push_back({nodes_[x].left, lo, mid});
    stack.push_back({nodes_[x].right, mid + 1, hi});
  }
  return res;
}

std::vector<std::optional<Weight>> codec_widest(const IntMatrix& labels, Vertex s,
                                                PathWeightCodec& codec) {
  const std::size_t n = labels.rows();
  std::vector<std::optional<PathWeightCodec::Handle>> dist(n);
  std::vector<bool> done(n, false);
  dist[s] = codec.empty();
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || !dist[v]) continue;
      if (best == n || codec.compare(*dist[v], *dist[best]) == Order::kLess) best = v;
    }
    if (best == n) break;
    done[best] = true;
    for (std::size_t v = 0; v < n; ++v) {
      const Weight l = labels(best, v);
      if (v == best || done[v] || l == kNegInf) continue;
      auto cand = codec.concat_edge(*dist[best], static_cast<std::size_t>(l));
      if (!dist[v] || codec.compare(cand, *dist[v]) == Order::kLess) dist[v] = cand;
    }
  }
  std::vector<std::optional<Weight>> res(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!dist[v]) continue;
    auto first = codec.first_nonzero(*dist[v]);
    res[v] = first ? static_cast<Weight>(*first) : kInf;
  }
  return res;
}

std::vector<ApbpSnapshot> fd_apbp_reference(std::size_t n, bool directed,
                                            const std::vector<Edge>& initial,
                                            const std::vector<UpdateOp>& updates,
                                            bool cross_check) {
  DynamicGraph g(n, directed);
  ListLabeller labeller;
  std::map<Weight, std::size_t> refs;
  auto add = [&](Weight w) {
    if (refs[w]++ == 0) labeller.insert(w);
  };
  auto drop = [&](Weight w) {
    if (--refs[w] == 0) {
      refs.erase(w);
      labeller.erase(w);
    }
  };
  for (const auto& e : initial) {
    g.insert_edge(e.u, e.v, e.w);
    add(e.w);
  }
  std::vector<ApbpSnapshot> res;
  for (const auto& op : updates) {
    if (const auto* ins = std::get_if<InsertEdge>(&op)) {
      g.insert_edge(ins->u, ins->v, ins->w);
      add(ins->w);
    } else if (const auto* del = std::get_if<DeleteEdge>(&op)) {
      const Weight w = g.weight(del->u, del->v).value_or(0);
      g.delete_edge(del->u, del->v);
      drop(w);
    } else if (const auto* set = std::get_if<SetWeight>(&op)) {
      const Weight old = g.weight(set->u, set->v).value_or(0);
      g.set_weight(set->u, set->v, set->w);
      add(set->w);
      drop(old);
    } else {
      continue;
    }
    IntMatrix labels(n, n, kNegInf);
    for (const auto& e : g.edges()) {
      const auto l = static_cast<Weight>(labeller.label(e.w));
      labels(e.u, e.v) = l;
      if (!directed) labels(e.v, e.u) = l;
    }
    for (std::size_t v = 0; v < n; ++v) labels(v, v) = kInf;
    IntMatrix closure = labels;
    for (std::size_t hops = 1; hops + 1 < n; hops *= 2) closure = maxmin_product(closure, closure);

    ApbpSnapshot snap;
    snap.labels = labels;
    snap.b.assign(n, std::vector<std::optional<Weight>>(n));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        const Weight c = closure(u, v);
        if (c == kNegInf) continue;
        snap.b[u][v] = c == kInf ? kInf : labeller.item_at(static_cast<std::size_t>(c));
      }
    }
    if (cross_check) {
      auto codec = PathWeightCodec::with_range(std::max(2 * n * n, labeller.capacity()));
      for (std::size_t s = 0; s < n; ++s) {
        auto row = codec_widest(labels, static_cast<Vertex>(s), codec);
        for (std::size_t v = 0; v < n; ++v) {
          const Weight want = closure(s, v);
          if (row[v].value_or(kNegInf) != want) throw std::logic_error("codec and closure disagree");
        }
      }
    }
    res.push_back(std::move(snap));
  }
  return res;
}

}  // namespace dynpath
