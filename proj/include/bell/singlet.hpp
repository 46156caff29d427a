#pragma once

#include <cstdint>

#include "bell/streams.hpp"

namespace bell {

/// One run of the two-detector apparatus at fixed settings.
struct SourceConfig {
  std::uint64_t n_pairs = 1;
  double theta_left = 0.0;   ///< radians
  double theta_right = 0.0;  ///< radians
  std::uint64_t seed = 0;
  Label left_label = Label::a;
  Label right_label = Label::b;
  /// Photon-polarization variant. Reserved; sample_run rejects it.
  bool photon_polarization = false;
};

/// Throws InvalidArgument / Unsupported; returns the config with canonical angles.
SourceConfig validated(SourceConfig config);

struct PairRun {
  SpinStream left;
  SpinStream right;
  SourceConfig config;

  std::size_t size() const noexcept { return left.size(); }
};

/// Singlet joint law P(s_l, s_r) = (1 - s_l * s_r * cos(theta_l - theta_r)) / 4.
double joint_probability(double theta_left, double theta_right, int s_left, int s_right);

/// Pair i is a pure function of (seed, i): the left outcome is a fair coin and
/// the right one is its negation with probability cos^2((theta_l - theta_r)/2).
PairRun sample_run(const SourceConfig& config);

struct MarginalFractions {
  double left_plus_fraction = 0.0;
  double right_plus_fraction = 0.0;
};

MarginalFractions marginal_check(const PairRun& run);

}  // namespace bell
