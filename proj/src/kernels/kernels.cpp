#include "dynpath/kernels.hpp"

#include <algorithm>
#include <bit>

namespace dynpath {

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (get(i, j)) t.set(j, i);
    }
  }
  return t;
}

std::size_t BitMatrix::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t finite_count(const IntMatrix& m) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != kInf && m(i, j) != kNegInf) ++c;
    }
  }
  return c;
}

namespace {

template <typename A, typename B>
void check_inner(const A& a, const B& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("inner dimensions differ");
}

// Runs body(i) for every row, in parallel when requested.
template <typename F>
void for_rows(std::size_t rows, Backend be, F&& body) {
  const auto n = static_cast<std::int64_t>(rows);
  if (be == Backend::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  }
}

bool finite(Weight x) { return x != kInf && x != kNegInf; }

}  // namespace

BitMatrix bool_matmul(const BitMatrix& a, const BitMatrix& b, Backend be) {
  check_inner(a, b);
  BitMatrix c(a.rows(), b.cols());
  const std::size_t words = b.words();
  for_rows(a.rows(), be, [&](std::size_t i) {
    std::uint64_t* out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      const std::uint64_t* src = b.row(k);
      for (std::size_t w = 0; w < words; ++w) out[w] |= src[w];
    }
  });
  return c;
}

IntMatrix count_matmul(const BitMatrix& a, const BitMatrix& b, Backend be) {
  check_inner(a, b);
  BitMatrix bt = b.transpose();
  IntMatrix c(a.rows(), b.cols(), 0);
  const std::size_t words = a.words();
  for_rows(a.rows(), be, [&](std::size_t i) {
    const std::uint64_t* x = a.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const std::uint64_t* y = bt.row(j);
      Weight s = 0;
      for (std::size_t w = 0; w < words; ++w) s += std::popcount(x[w] & y[w]);
      c(i, j) = s;
    }
  });
  return c;
}

IntMatrix dominance_naive(const IntMatrix& a, const IntMatrix& b, Backend be) {
  check_inner(a, b);
  IntMatrix c(a.rows(), b.cols(), 0);
  for_rows(a.rows(), be, [&](std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Weight x = a(i, k);
      if (!finite(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Weight y = b(k, j);
        if (finite(y) && x <= y) ++c(i, j);
      }
    }
  });
  return c;
}

IntMatrix equality_naive(const IntMatrix& a, const IntMatrix& b, Backend be) {
  check_inner(a, b);
  IntMatrix c(a.rows(), b.cols(), 0);
  for_rows(a.rows(), be, [&](std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Weight x = a(i, k);
      if (!finite(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) == x) ++c(i, j);
      }
    }
  });
  return c;
}

IntMatrix maxmin_naive(const IntMatrix& a, const IntMatrix& b, Backend be) {
  check_inner(a, b);
  IntMatrix c(a.rows(), b.cols(), kNegInf);
  for_rows(a.rows(), be, [&](std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Weight x = a(i, k);
      if (x == kNegInf) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) = std::max(c(i, j), std::min(x, b(k, j)));
      }
    }
  });
  return c;
}

Matrix<std::int32_t> min_witness_naive(const BitMatrix& a, const BitMatrix& b) {
  check_inner(a, b);
  Matrix<std::int32_t> c(a.rows(), b.cols(), kNoWitness);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a.get(i, k) && b.get(k, j)) {
          c(i, j) = static_cast<std::int32_t>(k);
          break;
        }
      }
    }
  }
  return c;
}

namespace {
std::int32_t first_common(const std::uint64_t* x, const std::uint64_t* y, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    if (auto m = x[w] & y[w]) return static_cast<std::int32_t>(w * 64 + std::countr_zero(m));
  }
  return kNoWitness;
}
}  // namespace

Matrix<std::int32_t> min_witness(const BitMatrix& a, const BitMatrix& b, Backend be) {
  check_inner(a, b);
  BitMatrix bt = b.transpose();
  Matrix<std::int32_t> c(a.rows(), b.cols(), kNoWitness);
  for_rows(a.rows(), be, [&](std::size_t i) {
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = first_common(a.row(i), bt.row(j), a.words());
  });
  return c;
}

WitnessTable min_witness3_naive(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c) {
  if (a.cols() != b.cols() || a.cols() != c.cols()) throw ShapeMismatch("witness ranges differ");
  WitnessTable t(a.rows(), b.rows(), c.rows());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
      for (std::size_t i3 = 0; i3 < c.rows(); ++i3) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
          if (a.get(i1, j) && b.get(i2, j) && c.get(i3, j)) {
            t.at(i1, i2, i3) = static_cast<std::int32_t>(j);
            break;
          }
        }
      }
    }
  }
  return t;
}

WitnessTable min_witness3(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c, Backend be) {
  if (a.cols() != b.cols() || a.cols() != c.cols()) throw ShapeMismatch("witness ranges differ");
  WitnessTable t(a.rows(), b.rows(), c.rows());
  const std::size_t words = a.words();
  for_rows(a.rows(), be, [&](std::size_t i1) {
    std::vector<std::uint64_t> ab(words);
    for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
      for (std::size_t w = 0; w < words; ++w) ab[w] = a.row(i1)[w] & b.row(i2)[w];
      for (std::size_t i3 = 0; i3 < c.rows(); ++i3) {
        t.at(i1, i2, i3) = first_common(ab.data(), c.row(i3), words);
      }
    }
  });
  return t;
}

}  // namespace dynpath
