#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dynpath/kernels.hpp"
#include "dynpath/matrix.hpp"

namespace dynpath {

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// Splits the finite cells of each line (row or column) of A into weight-sorted
// parts of at most part_size cells. The heaviest part of every line stays in
// place (A'); the other parts are moved to distinct lines of A'', recorded in Part::placed.
struct BalancedPair {
  struct Part {
    std::size_t line;    // original row (row balance) or column (column balance)
    std::size_t index;   // position among the line's parts, ascending by weight
    std::size_t placed;  // line of A'' holding the part; == line for the last part
    std::vector<std::size_t> cells;  // positions along the line, ascending by weight
  };

  bool by_column = false;
  std::size_t part_size = 1;
  IntMatrix prime;
  IntMatrix dprime;
  std::vector<std::vector<Part>> parts;  // parts[line], ascending

  const Part& last(std::size_t line) const { return parts[line].back(); }
};

BalancedPair row_balance(const IntMatrix& a);
BalancedPair col_balance(const IntMatrix& a);

// Row and column queries of the dominance product A <=# B for a sparse left
// operand. Left cells equal to +inf and right cells equal to -inf are absent.
class DominanceDS {
 public:
  DominanceDS(const IntMatrix& a, const IntMatrix& b, Backend be = Backend::kParallel);

  std::vector<Weight> row(std::size_t i) const;
  std::vector<Weight> col(std::size_t j) const;

  std::size_t rows() const { return a_.rows(); }
  std::size_t cols() const { return b_.cols(); }
  std::uint64_t ops() const { return ops_; }
  void reset_ops() const { ops_ = 0; }

 private:
  IntMatrix a_;
  IntMatrix b_;
  BalancedPair cb_;
  IntMatrix full_;  // parts of A'' fully dominated by B, counted by a Boolean product
  // part_of_[i * p + k]: index of the part of column k holding A[i][k].
  std::vector<std::uint32_t> part_of_;
  std::vector<std::vector<std::size_t>> b_row_finite_;
  mutable std::uint64_t ops_ = 0;
};

// Full dominance product built from the column-balanced structure.
IntMatrix dominance_sparse(const IntMatrix& a, const IntMatrix& b);

// Row and column queries of the (max, <=) product
//   C[i][j] = max { A[i][k] : A[i][k] <= B[k][j] }
// via weight buckets. Absent cells: +inf in A, -inf in B; kNegInf in results.
class MaxLeqDS {
 public:
  MaxLeqDS(const IntMatrix& a, const IntMatrix& b, std::size_t buckets,
           Backend be = Backend::kParallel);

  std::vector<Weight> row(std::size_t i) const;
  std::vector<Weight> col(std::size_t j) const;
  std::size_t buckets() const { return buckets_.size(); }
  std::size_t bucket_size() const { return bucket_size_; }

  // Cells of A and B in bucket r (others absent), and the Boolean mask of B
  // cells lying in later buckets. Exposed for decomposition checks.
  const IntMatrix& bucket_a(std::size_t r) const { return buckets_[r].a; }
  const IntMatrix& bucket_b(std::size_t r) const { return buckets_[r].b; }
  const BitMatrix& later_b(std::size_t r) const { return buckets_[r].later_b; }

 private:
  struct Bucket {
    IntMatrix a;
    IntMatrix b;
    BitMatrix later_b;
    BalancedPair rb;
    IntMatrix full;         // Boolean product: A_r cells against later B cells
    IntMatrix full_prime;   // same for A'_r
    IntMatrix full_dprime;  // same for A''_r
    std::unique_ptr<DominanceDS> dom;
    std::unique_ptr<DominanceDS> dom_prime;
    std::unique_ptr<DominanceDS> dom_dprime;
  };

  Weight best_in_row(const IntMatrix& m, std::size_t i, std::size_t j) const;
  Weight best_in_part(const IntMatrix& m, std::size_t i, const std::vector<std::size_t>& cells,
                      std::size_t j) const;

  IntMatrix a_;
  IntMatrix b_;
  std::size_t bucket_size_ = 1;
  std::vector<Bucket> buckets_;
};

// Row and column queries of the (max, min) product. Any value other than
// kNegInf is a real entry; kNegInf cells are absent.
class MaxMinDS {
 public:
  // g is the exponent trading preprocessing for query time; 0 <= g <= b where
  // inner dimension = rows^b. Bucket count is ceil(inner / rows^g).
  MaxMinDS(const IntMatrix& a, const IntMatrix& b, double g, Backend be = Backend::kParallel);

  std::vector<Weight> row(std::size_t i) const;
  std::vector<Weight> col(std::size_t j) const;
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t buckets() const { return left_->buckets(); }

  // log(inner) / log(rows) for an A operand; 1 when rows < 2.
  static double exponent_b(const IntMatrix& a);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Weight> values_;  // rank -> value
  std::unique_ptr<MaxLeqDS> left_;   // on (A, B)
  std::unique_ptr<MaxLeqDS> right_;  // on (B^T, A^T)
};

std::size_t bucket_count(std::size_t rows, std::size_t inner, double g);

IntMatrix maxmin_product(const IntMatrix& a, const IntMatrix& b, double g = -1);

// max{A[i][k] : A[i][k] <= B[k][j]} and min{B[k][j] : A[i][k] <= B[k][j]}.
IntMatrix max_leq_product(const IntMatrix& a, const IntMatrix& b);
IntMatrix min_leq_product(const IntMatrix& a, const IntMatrix& b);

}  // namespace dynpath
