#include "bell/errors.hpp"
#include "bell/kernels.hpp"
#include "bell/philox.hpp"

namespace bell::serial {

std::int64_t product_sum(std::span<const std::int8_t> x, std::span<const std::int8_t> y) {
  if (x.size() != y.size()) throw LengthMismatch("product_sum: length mismatch");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * y[i];
  return total;
}

void sample_singlet(const SingletParams& params, std::uint64_t begin, std::span<std::int8_t> left,
                    std::span<std::int8_t> right) {
  if (left.size() != right.size()) throw LengthMismatch("sample_singlet: length mismatch");
  const CounterRng rng(params.seed);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto u = rng.uniforms(begin + i, 0);
    const std::int8_t l = u[0] < 0.5 ? 1 : -1;
    left[i] = l;
    right[i] = u[1] < params.anti_probability ? static_cast<std::int8_t>(-l) : l;
  }
}

void sample_cascade(const CascadeParams& params, std::uint64_t begin, std::span<std::int8_t> a,
                    std::span<std::int8_t> ap, std::span<std::int8_t> b, std::span<std::int8_t> bp) {
  if (ap.size() != a.size() || b.size() != a.size() || bp.size() != a.size()) {
    throw LengthMismatch("sample_cascade: length mismatch");
  }
  sample_singlet(params.first_stage, begin, a, b);
  const CounterRng rng(params.first_stage.seed);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto u = rng.uniforms(begin + i, 1);
    ap[i] = u[0] < params.left_flip_probability ? static_cast<std::int8_t>(-a[i]) : a[i];
    bp[i] = u[1] < params.right_flip_probability ? static_cast<std::int8_t>(-b[i]) : b[i];
  }
}

}  // namespace bell::serial
