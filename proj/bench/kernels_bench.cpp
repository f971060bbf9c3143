#include <benchmark/benchmark.h>

#include <random>

#include "dynpath/kernels.hpp"

using namespace dynpath;

namespace {

BitMatrix random_bits(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(density);
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, bit(rng));
  }
  return m;
}

IntMatrix random_ints(std::size_t n, Weight hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> w(0, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = w(rng);
  }
  return m;
}

Backend backend(const benchmark::State& s) { return s.range(1) ? Backend::kParallel : Backend::kSerial; }

void BM_BoolMatmul(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  auto a = random_bits(n, 0.1, 1), b = random_bits(n, 0.1, 2);
  for (auto _ : s) benchmark::DoNotOptimize(bool_matmul(a, b, backend(s)));
}

void BM_CountMatmul(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  auto a = random_bits(n, 0.3, 1), b = random_bits(n, 0.3, 2);
  for (auto _ : s) benchmark::DoNotOptimize(count_matmul(a, b, backend(s)));
}

void BM_Dominance(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  auto a = random_ints(n, 1000, 1), b = random_ints(n, 1000, 2);
  for (auto _ : s) benchmark::DoNotOptimize(dominance_naive(a, b, backend(s)));
}

void BM_MaxMin(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  auto a = random_ints(n, 1000, 1), b = random_ints(n, 1000, 2);
  for (auto _ : s) benchmark::DoNotOptimize(maxmin_naive(a, b, backend(s)));
}

void BM_MinWitness(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  auto a = random_bits(n, 0.05, 1), b = random_bits(n, 0.05, 2);
  for (auto _ : s) benchmark::DoNotOptimize(min_witness(a, b, backend(s)));
}

void BM_MinWitness3(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  auto a = random_bits(n, 0.1, 1), b = random_bits(n, 0.1, 2), c = random_bits(n, 0.1, 3);
  for (auto _ : s) benchmark::DoNotOptimize(min_witness3(a, b, c, backend(s)));
}

// Second argument: 0 serial reference, 1 OpenMP.
void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {64, 128, 256}) {
    for (int par : {0, 1}) b->Args({n, par});
  }
}

void small_sizes(benchmark::internal::Benchmark* b) {
  for (int n : {16, 32, 64}) {
    for (int par : {0, 1}) b->Args({n, par});
  }
}

}  // namespace

BENCHMARK(BM_BoolMatmul)->Apply(sizes);
BENCHMARK(BM_CountMatmul)->Apply(sizes);
BENCHMARK(BM_Dominance)->Apply(sizes);
BENCHMARK(BM_MaxMin)->Apply(sizes);
BENCHMARK(BM_MinWitness)->Apply(sizes);
BENCHMARK(BM_MinWitness3)->Apply(small_sizes);

BENCHMARK_MAIN();
