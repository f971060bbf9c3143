#pragma once

#include <cstdint>
#include <vector>

#include "dynpath/matrix.hpp"

namespace dynpath {

// Serial kernels are the reference; parallel ones split output rows over OpenMP threads.
enum class Backend { kSerial, kParallel };

BitMatrix bool_matmul(const BitMatrix& a, const BitMatrix& b, Backend be = Backend::kParallel);

// Integer product of 0/1 matrices: C[i][j] = |{k : A[i][k] and B[k][j]}|.
IntMatrix count_matmul(const BitMatrix& a, const BitMatrix& b, Backend be = Backend::kParallel);

// C[i][j] = |{k : A[i][k] <= B[k][j]}| over finite cells only.
IntMatrix dominance_naive(const IntMatrix& a, const IntMatrix& b, Backend be = Backend::kSerial);

// C[i][j] = |{k : A[i][k] == B[k][j]}| over finite cells only.
IntMatrix equality_naive(const IntMatrix& a, const IntMatrix& b, Backend be = Backend::kSerial);

// C[i][j] = max_k min(A[i][k], B[k][j]); kNegInf means "no entry".
IntMatrix maxmin_naive(const IntMatrix& a, const IntMatrix& b, Backend be = Backend::kSerial);

inline constexpr std::int32_t kNoWitness = -1;

Matrix<std::int32_t> min_witness_naive(const BitMatrix& a, const BitMatrix& b);
// Word-parallel minimum witness; kNoWitness where no k exists.
Matrix<std::int32_t> min_witness(const BitMatrix& a, const BitMatrix& b,
                                 Backend be = Backend::kParallel);

// Table over (i1, i2, i3) of the least j with A[i1][j] & B[i2][j] & C[i3][j].
class WitnessTable {
 public:
  WitnessTable() = default;
  WitnessTable(std::size_t n1, std::size_t n2, std::size_t n3)
      : n1_(n1), n2_(n2), n3_(n3), cells_(n1 * n2 * n3, kNoWitness) {}
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  std::int32_t& at(std::size_t i1, std::size_t i2, std::size_t i3) {
    return cells_[(i1 * n2_ + i2) * n3_ + i3];
  }
  std::int32_t at(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return cells_[(i1 * n2_ + i2) * n3_ + i3];
  }
  bool operator==(const WitnessTable&) const = default;

 private:
  std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<std::int32_t> cells_;
};

WitnessTable min_witness3_naive(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c);
WitnessTable min_witness3(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c,
                          Backend be = Backend::kParallel);

}  // namespace dynpath
