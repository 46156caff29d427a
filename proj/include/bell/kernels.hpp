#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain loop in
// bell::serial, kept as the reference, and an OpenMP version in
// bell::parallel. Both must produce bit-identical output for any thread count.

#include <cstdint>
#include <span>

namespace bell {

/// Per-pair sampling parameters for the singlet source.
struct SingletParams {
  std::uint64_t seed = 0;
  /// Probability that the right outcome is the negation of the left one,
  /// cos^2((theta_l - theta_r) / 2).
  double anti_probability = 1.0;
};

/// Per-pair sampling parameters for the two-stage cascade.
struct CascadeParams {
  SingletParams first_stage;
  double left_flip_probability = 0.0;
  double right_flip_probability = 0.0;
};

namespace serial {

/// Sum of x[i]*y[i] over equal-length +-1 spans.
std::int64_t product_sum(std::span<const std::int8_t> x, std::span<const std::int8_t> y);

/// Pairs [begin, begin + left.size()) of a singlet run.
void sample_singlet(const SingletParams& params, std::uint64_t begin, std::span<std::int8_t> left,
                    std::span<std::int8_t> right);

void sample_cascade(const CascadeParams& params, std::uint64_t begin, std::span<std::int8_t> a,
                    std::span<std::int8_t> ap, std::span<std::int8_t> b, std::span<std::int8_t> bp);

}  // namespace serial

namespace parallel {

std::int64_t product_sum(std::span<const std::int8_t> x, std::span<const std::int8_t> y);

void sample_singlet(const SingletParams& params, std::uint64_t begin, std::span<std::int8_t> left,
                    std::span<std::int8_t> right);

void sample_cascade(const CascadeParams& params, std::uint64_t begin, std::span<std::int8_t> a,
                    std::span<std::int8_t> ap, std::span<std::int8_t> b, std::span<std::int8_t> bp);

}  // namespace parallel

/// Caps OpenMP parallelism; values < 1 restore the runtime default.
void set_thread_limit(int threads);
/// Reads BELL_THREADS and applies it. Returns the applied value or 0 if unset.
int apply_thread_limit_from_env();
int max_threads();

}  // namespace bell
