// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "lfin/chain.hpp"
#include "lfin/cw_equivariant.hpp"
#include "lfin/fl_matrix.hpp"

namespace {

lfin::FlMatrix random_fl(std::size_t rows, std::size_t cols, lfin::Fl p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<lfin::Fl> coeff(0, p - 1);
  lfin::FlMatrix m(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = coeff(rng);
  return m;
}

void BM_RrefSerial(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto m = random_fl(n, n, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lfin::serial::rref(m));
}

void BM_RrefParallel(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto m = random_fl(n, n, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lfin::parallel::rref(m));
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto a = random_fl(n, n, 5, 2), b = random_fl(n, n, 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lfin::serial::multiply(a, b));
}

void BM_MultiplyParallel(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto a = random_fl(n, n, 5, 2), b = random_fl(n, n, 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lfin::parallel::multiply(a, b));
}

// End to end: homology of a lens complex over C_{l^k}.
void BM_LensHomology(benchmark::State& state) {
  const auto c = lfin::chains_of_cover(lfin::lens_complex(2, unsigned(state.range(0)), 6));
  for (auto _ : state) benchmark::DoNotOptimize(lfin::homology_dims(c));
}

}  // namespace

BENCHMARK(BM_RrefSerial)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_RrefParallel)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_MultiplySerial)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_MultiplyParallel)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_LensHomology)->Arg(3)->Arg(5)->Arg(7);

BENCHMARK_MAIN();
