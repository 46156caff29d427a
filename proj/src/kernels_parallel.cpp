#include <cstdlib>
#include <string>

#include <omp.h>

#include "bell/errors.hpp"
#include "bell/kernels.hpp"
#include "bell/philox.hpp"

namespace bell {

namespace {
// Below this many elements the fork/join overhead dominates.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 15;
}  // namespace

namespace parallel {

std::int64_t product_sum(std::span<const std::int8_t> x, std::span<const std::int8_t> y) {
  if (x.size() != y.size()) throw LengthMismatch("product_sum: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::int8_t* xs = x.data();
  const std::int8_t* ys = y.data();
  std::int64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) total += xs[i] * ys[i];
  return total;
}

void sample_singlet(const SingletParams& params, std::uint64_t begin, std::span<std::int8_t> left,
                    std::span<std::int8_t> right) {
  if (left.size() != right.size()) throw LengthMismatch("sample_singlet: length mismatch");
  const CounterRng rng(params.seed);
  const auto n = static_cast<std::ptrdiff_t>(left.size());
  const double anti = params.anti_probability;
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = rng.uniforms(begin + static_cast<std::uint64_t>(i), 0);
    const std::int8_t l = u[0] < 0.5 ? 1 : -1;
    left[i] = l;
    right[i] = u[1] < anti ? static_cast<std::int8_t>(-l) : l;
  }
}

void sample_cascade(const CascadeParams& params, std::uint64_t begin, std::span<std::int8_t> a,
                    std::span<std::int8_t> ap, std::span<std::int8_t> b, std::span<std::int8_t> bp) {
  if (ap.size() != a.size() || b.size() != a.size() || bp.size() != a.size()) {
    throw LengthMismatch("sample_cascade: length mismatch");
  }
  const CounterRng rng(params.first_stage.seed);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double anti = params.first_stage.anti_probability;
  const double left_flip = params.left_flip_probability;
  const double right_flip = params.right_flip_probability;
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto index = begin + static_cast<std::uint64_t>(i);
    const auto first = rng.uniforms(index, 0);
    const auto second = rng.uniforms(index, 1);
    const std::int8_t l = first[0] < 0.5 ? 1 : -1;
    const std::int8_t r = first[1] < anti ? static_cast<std::int8_t>(-l) : l;
    a[i] = l;
    b[i] = r;
    ap[i] = second[0] < left_flip ? static_cast<std::int8_t>(-l) : l;
    bp[i] = second[1] < right_flip ? static_cast<std::int8_t>(-r) : r;
  }
}

}  // namespace parallel

namespace {
const int kDefaultThreads = omp_get_max_threads();
}  // namespace

void set_thread_limit(int threads) { omp_set_num_threads(threads >= 1 ? threads : kDefaultThreads); }

int apply_thread_limit_from_env() {
  const char* raw = std::getenv("BELL_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1) {
    throw InvalidArgument("BELL_THREADS must be a positive integer, got '" + std::string(raw) + "'");
  }
  set_thread_limit(static_cast<int>(value));
  return static_cast<int>(value);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace bell
