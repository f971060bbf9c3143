#include "dynpath/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <tuple>

namespace dynpath {

namespace {

bool finite(Weight x) { return x != kInf && x != kNegInf; }

void check_inner(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("inner dimensions differ");
}

BitMatrix finite_mask(const IntMatrix& m) {
  BitMatrix bits(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (finite(m(i, j))) bits.set(i, j);
    }
  }
  return bits;
}

}  // namespace

BalancedPair row_balance(const IntMatrix& a) {
  BalancedPair bp;
  const std::size_t n = a.rows();
  const std::size_t m = finite_count(a);
  bp.part_size = n == 0 ? 1 : std::max<std::size_t>(1, (m + n - 1) / n);
  bp.prime = IntMatrix(n, a.cols(), kInf);
  bp.dprime = IntMatrix(n, a.cols(), kInf);
  bp.parts.resize(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (finite(a(i, c))) cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end(), [&](std::size_t x, std::size_t y) {
      return std::make_pair(a(i, x), x) < std::make_pair(a(i, y), y);
    });
    const std::size_t count = (cells.size() + bp.part_size - 1) / bp.part_size;
    for (std::size_t q = 0; q < count; ++q) {
      BalancedPair::Part part;
      part.line = i;
      part.index = q;
      const std::size_t lo = q * bp.part_size;
      const std::size_t hi = std::min(cells.size(), lo + bp.part_size);
      part.cells.assign(cells.begin() + static_cast<std::ptrdiff_t>(lo),
                        cells.begin() + static_cast<std::ptrdiff_t>(hi));
      const bool last = q + 1 == count;
      part.placed = last ? i : next++;
      IntMatrix& dst = last ? bp.prime : bp.dprime;
      for (std::size_t c : part.cells) dst(part.placed, c) = a(i, c);
      bp.parts[i].push_back(std::move(part));
    }
  }
  return bp;
}

BalancedPair col_balance(const IntMatrix& a) {
  BalancedPair bp = row_balance(a.transpose());
  bp.by_column = true;
  bp.prime = bp.prime.transpose();
  bp.dprime = bp.dprime.transpose();
  return bp;
}

DominanceDS::DominanceDS(const IntMatrix& a, const IntMatrix& b, Backend be)
    : a_(a), b_(b), cb_(col_balance(a)) {
  check_inner(a, b);
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  const std::size_t m = b.cols();
  BitMatrix ahat = finite_mask(cb_.dprime);
  BitMatrix bhat(p, m);
  part_of_.assign(n * p, 0);
  for (std::size_t k = 0; k < p; ++k) {
    const auto& parts = cb_.parts[k];
    for (const auto& part : parts) {
      for (std::size_t i : part.cells) part_of_[i * p + k] = static_cast<std::uint32_t>(part.index);
      if (part.index + 1 == parts.size()) continue;
      const Weight top = a(part.cells.back(), k);
      for (std::size_t j = 0; j < m; ++j) {
        if (finite(b(k, j)) && b(k, j) >= top) bhat.set(part.placed, j);
      }
    }
  }
  full_ = count_matmul(ahat, bhat, be);
  b_row_finite_.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      if (finite(b(k, j))) b_row_finite_[k].push_back(j);
    }
  }
}

std::vector<Weight> DominanceDS::row(std::size_t i) const {
  if (i >= a_.rows()) throw IndexOutOfRange("dominance row out of range");
  const std::size_t p = a_.cols();
  std::vector<Weight> res(full_.row(i), full_.row(i) + full_.cols());
  for (std::size_t k = 0; k < p; ++k) {
    const Weight x = a_(i, k);
    if (!finite(x)) continue;
    const auto& parts = cb_.parts[k];
    const auto& part = parts[part_of_[i * p + k]];
    const bool last = part.index + 1 == parts.size();
    const Weight lo = a_(part.cells.front(), k);
    const Weight hi = a_(part.cells.back(), k);
    for (std::size_t j : b_row_finite_[k]) {
      ++ops_;
      const Weight y = b_(k, j);
      // Non-last parts are already counted wherever y >= hi.
      if (x <= y && (last || (lo <= y && y < hi))) ++res[j];
    }
  }
  return res;
}

std::vector<Weight> DominanceDS::col(std::size_t j) const {
  if (j >= b_.cols()) throw IndexOutOfRange("dominance column out of range");
  const std::size_t n = a_.rows();
  const std::size_t p = a_.cols();
  std::vector<Weight> res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = full_(i, j);
  for (std::size_t k = 0; k < p; ++k) {
    const Weight y = b_(k, j);
    if (!finite(y)) continue;
    const auto& parts = cb_.parts[k];
    if (parts.empty()) continue;
    for (std::size_t i : parts.back().cells) {
      ++ops_;
      if (a_(i, k) <= y) ++res[i];
    }
    // The unique non-last part that y splits, if any.
    auto it = std::partition_point(parts.begin(), parts.end() - 1, [&](const auto& part) {
      return a_(part.cells.back(), k) <= y;
    });
    if (it == parts.end() - 1 || a_(it->cells.front(), k) > y) continue;
    for (std::size_t i : it->cells) {
      ++ops_;
      if (a_(i, k) <= y) ++res[i];
    }
  }
  return res;
}

IntMatrix dominance_sparse(const IntMatrix& a, const IntMatrix& b) {
  DominanceDS ds(a, b);
  IntMatrix c(a.rows(), b.cols(), 0);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto col = ds.col(j);
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = col[i];
  }
  return c;
}

MaxLeqDS::MaxLeqDS(const IntMatrix& a, const IntMatrix& b, std::size_t buckets, Backend be)
    : a_(a), b_(b) {
  check_inner(a, b);
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  const std::size_t m = b.cols();
  // Global order: (value, tag, row, col) with A cells tagged before B cells.
  std::vector<std::tuple<Weight, int, std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      if (finite(a(i, k))) cells.emplace_back(a(i, k), 0, i, k);
    }
  }
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      if (finite(b(k, j))) cells.emplace_back(b(k, j), 1, k, j);
    }
  }
  if (cells.empty()) return;
  std::sort(cells.begin(), cells.end());
  buckets = std::max<std::size_t>(1, buckets);
  bucket_size_ = (cells.size() + buckets - 1) / buckets;
  const std::size_t count = (cells.size() + bucket_size_ - 1) / bucket_size_;
  Matrix<std::int64_t> b_bucket(p, m, -1);
  buckets_.resize(count);
  for (auto& bk : buckets_) {
    bk.a = IntMatrix(n, p, kInf);
    bk.b = IntMatrix(p, m, kNegInf);
  }
  for (std::size_t pos = 0; pos < cells.size(); ++pos) {
    const auto& [v, tag, x, y] = cells[pos];
    auto& bk = buckets_[pos / bucket_size_];
    if (tag == 0) {
      bk.a(x, y) = v;
    } else {
      bk.b(x, y) = v;
      b_bucket(x, y) = static_cast<std::int64_t>(pos / bucket_size_);
    }
  }
  const auto total = static_cast<std::int64_t>(count);
  const Backend inner = be == Backend::kParallel ? Backend::kSerial : be;
#pragma omp parallel for schedule(dynamic, 1) if (be == Backend::kParallel)
  for (std::int64_t r = 0; r < total; ++r) {
    auto& bk = buckets_[static_cast<std::size_t>(r)];
    bk.later_b = BitMatrix(p, m);
    for (std::size_t k = 0; k < p; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        if (b_bucket(k, j) > r) bk.later_b.set(k, j);
      }
    }
    bk.rb = row_balance(bk.a);
    bk.full = count_matmul(finite_mask(bk.a), bk.later_b, inner);
    bk.full_prime = count_matmul(finite_mask(bk.rb.prime), bk.later_b, inner);
    bk.full_dprime = count_matmul(finite_mask(bk.rb.dprime), bk.later_b, inner);
    bk.dom = std::make_unique<DominanceDS>(bk.a, bk.b, inner);
    bk.dom_prime = std::make_unique<DominanceDS>(bk.rb.prime, bk.b, inner);
    bk.dom_dprime = std::make_unique<DominanceDS>(bk.rb.dprime, bk.b, inner);
  }
}

Weight MaxLeqDS::best_in_row(const IntMatrix& m, std::size_t i, std::size_t j) const {
  Weight best = kNegInf;
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Weight x = m(i, k);
    const Weight y = b_(k, j);
    if (finite(x) && finite(y) && x <= y) best = std::max(best, x);
  }
  return best;
}

Weight MaxLeqDS::best_in_part(const IntMatrix& m, std::size_t i,
                              const std::vector<std::size_t>& cells, std::size_t j) const {
  Weight best = kNegInf;
  for (std::size_t k : cells) {
    const Weight x = m(i, k);
    const Weight y = b_(k, j);
    if (finite(y) && x <= y) best = std::max(best, x);
  }
  return best;
}

std::vector<Weight> MaxLeqDS::row(std::size_t i) const {
  if (i >= a_.rows()) throw IndexOutOfRange("row out of range");
  const std::size_t m = b_.cols();
  std::vector<Weight> res(m, kNegInf);
  std::vector<std::int64_t> top(m, -1);
  std::size_t open = m;
  for (std::size_t r = buckets_.size(); r-- > 0 && open > 0;) {
    const auto& bk = buckets_[r];
    auto d = bk.dom->row(i);
    for (std::size_t j = 0; j < m; ++j) {
      if (top[j] < 0 && d[j] + bk.full(i, j) > 0) {
        top[j] = static_cast<std::int64_t>(r);
        --open;
      }
    }
  }
  for (std::size_t r = 0; r < buckets_.size(); ++r) {
    const auto& bk = buckets_[r];
    std::vector<std::size_t> js;
    for (std::size_t j = 0; j < m; ++j) {
      if (top[j] == static_cast<std::int64_t>(r)) js.push_back(j);
    }
    if (js.empty()) continue;
    auto dp = bk.dom_prime->row(i);
    const auto& parts = bk.rb.parts[i];
    std::vector<std::vector<Weight>> dd(parts.size());
    for (std::size_t j : js) {
      if (dp[j] + bk.full_prime(i, j) > 0) {
        res[j] = best_in_row(bk.rb.prime, i, j);
        continue;
      }
      for (std::size_t q = parts.size() - 1; q-- > 0;) {
        const std::size_t placed = parts[q].placed;
        if (dd[q].empty()) dd[q] = bk.dom_dprime->row(placed);
        if (dd[q][j] + bk.full_dprime(placed, j) > 0) {
          res[j] = best_in_part(bk.a, i, parts[q].cells, j);
          break;
        }
      }
    }
  }
  return res;
}

std::vector<Weight> MaxLeqDS::col(std::size_t j) const {
  if (j >= b_.cols()) throw IndexOutOfRange("column out of range");
  const std::size_t n = a_.rows();
  std::vector<Weight> res(n, kNegInf);
  std::vector<std::int64_t> top(n, -1);
  std::size_t open = n;
  for (std::size_t r = buckets_.size(); r-- > 0 && open > 0;) {
    const auto& bk = buckets_[r];
    auto d = bk.dom->col(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (top[i] < 0 && d[i] + bk.full(i, j) > 0) {
        top[i] = static_cast<std::int64_t>(r);
        --open;
      }
    }
  }
  for (std::size_t r = 0; r < buckets_.size(); ++r) {
    const auto& bk = buckets_[r];
    std::vector<std::size_t> is;
    for (std::size_t i = 0; i < n; ++i) {
      if (top[i] == static_cast<std::int64_t>(r)) is.push_back(i);
    }
    if (is.empty()) continue;
    auto dp = bk.dom_prime->col(j);
    std::vector<Weight> dd;
    for (std::size_t i : is) {
      if (dp[i] + bk.full_prime(i, j) > 0) {
        res[i] = best_in_row(bk.rb.prime, i, j);
        continue;
      }
      const auto& parts = bk.rb.parts[i];
      if (dd.empty()) dd = bk.dom_dprime->col(j);
      for (std::size_t q = parts.size() - 1; q-- > 0;) {
        const std::size_t placed = parts[q].placed;
        if (dd[placed] + bk.full_dprime(placed, j) > 0) {
          res[i] = best_in_part(bk.a, i, parts[q].cells, j);
          break;
        }
      }
    }
  }
  return res;
}

std::size_t bucket_count(std::size_t rows, std::size_t inner, double g) {
  const double denom = std::pow(static_cast<double>(std::max<std::size_t>(rows, 1)), g);
  const auto c = static_cast<std::size_t>(std::ceil(static_cast<double>(inner) / denom - 1e-9));
  return std::max<std::size_t>(1, c);
}

double MaxMinDS::exponent_b(const IntMatrix& a) {
  if (a.rows() < 2) return 1.0;
  if (a.cols() < 1) return 0.0;
  return std::log(static_cast<double>(a.cols())) / std::log(static_cast<double>(a.rows()));
}

MaxMinDS::MaxMinDS(const IntMatrix& a, const IntMatrix& b, double g, Backend be)
    : rows_(a.rows()), cols_(b.cols()) {
  check_inner(a, b);
  const double bexp = exponent_b(a);
  if (!(g >= 0.0) || g > bexp + 1e-9) throw BadParameter("g must lie in [0, b]");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) != kNegInf) values_.push_back(a(i, k));
    }
  }
  for (std::size_t k = 0; k < b.rows(); ++k) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (b(k, j) != kNegInf) values_.push_back(b(k, j));
    }
  }
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  auto rank = [&](Weight v) {
    return static_cast<Weight>(std::lower_bound(values_.begin(), values_.end(), v) - values_.begin());
  };
  // Rank matrices in both sentinel roles.
  IntMatrix a_left(a.rows(), a.cols()), a_right(a.cols(), a.rows());
  IntMatrix b_right(b.rows(), b.cols()), b_left(b.cols(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const bool absent = a(i, k) == kNegInf;
      const Weight r = absent ? 0 : rank(a(i, k));
      a_left(i, k) = absent ? kInf : r;
      a_right(k, i) = absent ? kNegInf : r;
    }
  }
  for (std::size_t k = 0; k < b.rows(); ++k) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const bool absent = b(k, j) == kNegInf;
      const Weight r = absent ? 0 : rank(b(k, j));
      b_right(k, j) = absent ? kNegInf : r;
      b_left(j, k) = absent ? kInf : r;
    }
  }
  const std::size_t buckets = bucket_count(a.rows(), a.cols(), g);
  left_ = std::make_unique<MaxLeqDS>(a_left, b_right, buckets, be);
  right_ = std::make_unique<MaxLeqDS>(b_left, a_right, buckets, be);
}

std::vector<Weight> MaxMinDS::row(std::size_t i) const {
  auto x = left_->row(i);
  auto y = right_->col(i);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Weight r = std::max(x[j], y[j]);
    x[j] = r == kNegInf ? kNegInf : values_[static_cast<std::size_t>(r)];
  }
  return x;
}

std::vector<Weight> MaxMinDS::col(std::size_t j) const {
  auto x = left_->col(j);
  auto y = right_->row(j);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Weight r = std::max(x[i], y[i]);
    x[i] = r == kNegInf ? kNegInf : values_[static_cast<std::size_t>(r)];
  }
  return x;
}

IntMatrix maxmin_product(const IntMatrix& a, const IntMatrix& b, double g) {
  if (g < 0) g = MaxMinDS::exponent_b(a) / 2;
  MaxMinDS ds(a, b, g);
  IntMatrix c(a.rows(), b.cols(), kNegInf);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = ds.row(i);
    std::copy(r.begin(), r.end(), c.row(i));
  }
  return c;
}

IntMatrix max_leq_product(const IntMatrix& a, const IntMatrix& b) {
  check_inner(a, b);
  MaxLeqDS ds(a, b, bucket_count(a.rows(), a.cols(), MaxMinDS::exponent_b(a) / 2));
  IntMatrix c(a.rows(), b.cols(), kNegInf);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = ds.row(i);
    std::copy(r.begin(), r.end(), c.row(i));
  }
  return c;
}

IntMatrix min_leq_product(const IntMatrix& a, const IntMatrix& b) {
  check_inner(a, b);
  // min{B : A <= B} = -max{-B : -B <= -A}, evaluated on the transposed negated pair.
  IntMatrix x(b.cols(), b.rows()), y(a.cols(), a.rows());
  for (std::size_t k = 0; k < b.rows(); ++k) {
    for (std::size_t j = 0; j < b.cols(); ++j) x(j, k) = finite(b(k, j)) ? -b(k, j) : kInf;
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) y(k, i) = finite(a(i, k)) ? -a(i, k) : kNegInf;
  }
  MaxLeqDS ds(x, y, bucket_count(x.rows(), x.cols(), MaxMinDS::exponent_b(x) / 2));
  IntMatrix c(a.rows(), b.cols(), kInf);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto r = ds.row(j);
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = r[i] == kNegInf ? kInf : -r[i];
  }
  return c;
}

}  // namespace dynpath
