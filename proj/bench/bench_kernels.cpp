// Serial reference vs OpenMP kernels. Thread count follows BELL_THREADS.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "bell/feasibility.hpp"
#include "bell/kernels.hpp"

namespace {

std::vector<std::int8_t> spins(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::int8_t> v(n);
  for (auto& x : v) x = (rng() & 1) ? 1 : -1;
  return v;
}

template <bool Parallel>
void BM_ProductSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = spins(n, 1), y = spins(n, 2);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(bell::parallel::product_sum(x, y));
    else
      benchmark::DoNotOptimize(bell::serial::product_sum(x, y));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_SampleSinglet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::int8_t> left(n), right(n);
  const bell::SingletParams params{7, 0.75};
  for (auto _ : state) {
    if constexpr (Parallel)
      bell::parallel::sample_singlet(params, 0, left, right);
    else
      bell::serial::sample_singlet(params, 0, left, right);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_SampleCascade(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::int8_t> a(n), ap(n), b(n), bp(n);
  const bell::CascadeParams params{{7, 0.75}, 0.5, 0.146};
  for (auto _ : state) {
    if constexpr (Parallel)
      bell::parallel::sample_cascade(params, 0, a, ap, b, bp);
    else
      bell::serial::sample_cascade(params, 0, a, ap, b, bp);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Scan(benchmark::State& state) {
  const auto points = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) ? bell::ScanMode::quadruple : bell::ScanMode::triple;
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(bell::parallel::angle_violation_scan(points, mode));
    else
      benchmark::DoNotOptimize(bell::serial::angle_violation_scan(points, mode));
  }
}

}  // namespace

BENCHMARK(BM_ProductSum<false>)->Arg(1 << 20)->Arg(1 << 24);
BENCHMARK(BM_ProductSum<true>)->Arg(1 << 20)->Arg(1 << 24);
BENCHMARK(BM_SampleSinglet<false>)->Arg(1 << 20);
BENCHMARK(BM_SampleSinglet<true>)->Arg(1 << 20);
BENCHMARK(BM_SampleCascade<false>)->Arg(1 << 20);
BENCHMARK(BM_SampleCascade<true>)->Arg(1 << 20);
BENCHMARK(BM_Scan<false>)->Args({72, 0})->Args({36, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scan<true>)->Args({72, 0})->Args({36, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
