#include "bell/singlet.hpp"

#include <cmath>
#include <vector>

#include "bell/errors.hpp"
#include "bell/kernels.hpp"

namespace bell {

SourceConfig validated(SourceConfig config) {
  if (config.photon_polarization) {
    throw Unsupported("photon polarization source: unsupported");
  }
  if (config.n_pairs < 1) throw InvalidArgument("n_pairs must be >= 1");
  if (is_left(config.left_label) == is_left(config.right_label) || !is_left(config.left_label)) {
    throw InvalidArgument("left label must be a or a', right label b or b'");
  }
  config.theta_left = canonical_angle(config.theta_left);
  config.theta_right = canonical_angle(config.theta_right);
  return config;
}

double joint_probability(double theta_left, double theta_right, int s_left, int s_right) {
  if ((s_left != 1 && s_left != -1) || (s_right != 1 && s_right != -1)) {
    throw InvalidArgument("spins must be +1 or -1");
  }
  return (1.0 - s_left * s_right * std::cos(theta_left - theta_right)) / 4.0;
}

PairRun sample_run(const SourceConfig& raw) {
  const auto config = validated(raw);
  const double half = 0.5 * (config.theta_left - config.theta_right);
  const double c = std::cos(half);
  std::vector<std::int8_t> left(config.n_pairs);
  std::vector<std::int8_t> right(config.n_pairs);
  parallel::sample_singlet({config.seed, c * c}, 0, left, right);
  return PairRun{SpinStream(std::move(left), config.theta_left, config.left_label, config.seed),
                 SpinStream(std::move(right), config.theta_right, config.right_label, config.seed),
                 config};
}

MarginalFractions marginal_check(const PairRun& run) {
  auto plus_fraction = [](const SpinStream& s) {
    std::size_t plus = 0;
    for (auto v : s.outcomes()) plus += v > 0;
    return static_cast<double>(plus) / static_cast<double>(s.size());
  };
  return {plus_fraction(run.left), plus_fraction(run.right)};
}

}  // namespace bell
