#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bell/streams.hpp"

namespace bell {

/// Two Stern-Gerlach fields per arm. Traversal order is a then a' on the left
/// and b then b' on the right.
struct CascadeConfig {
  std::uint64_t n_pairs = 1;
  double theta_a = 0.0;
  double theta_a_prime = 0.0;
  double theta_b = 0.0;
  double theta_b_prime = 0.0;
  std::uint64_t seed = 0;
};

CascadeConfig validated(CascadeConfig config);

/// Final spot on one arm: 2 * bit(first) + bit(second), bit(+1) = 0, bit(-1) = 1.
std::uint8_t spot_index(std::int8_t first, std::int8_t second);
std::pair<std::int8_t, std::int8_t> decode_spot(std::uint8_t spot);

struct CascadeRun {
  AlignedSet aligned;
  std::vector<std::uint8_t> left_spots;
  std::vector<std::uint8_t> right_spots;
  CascadeConfig config;
};

/// sin^2((theta_second - theta_first) / 2).
double sequential_flip_probability(double theta_first, double theta_second);

/// First stage is drawn exactly like sample_run at (theta_a, theta_b) with the
/// same seed; the second stage flips each outcome independently.
CascadeRun sample_cascade(const CascadeConfig& config);

/// Closed-form correlations of the cascade. Checked against a brute-force sum
/// over the 16 outcome atoms in the tests.
struct CascadePrediction {
  double ab, abp, apb, apbp, aap, bbp;
};
CascadePrediction predict_cascade(const CascadeConfig& config);

struct PairCorrelation {
  Label x;
  Label y;
  CorrelationValue empirical;
  double predicted = 0.0;
};

struct CorrelationReport {
  std::vector<PairCorrelation> pairs;  ///< ab, ab', a'b, a'b', aa', bb'
  IdentityVerdict identity;
  InequalityEvaluation chsh_empirical;
  InequalityEvaluation chsh_predicted;
  std::string prediction_source;

  const PairCorrelation& pair(Label x, Label y) const;
};

CorrelationReport cascade_correlations(const CascadeRun& run);

bool spots_roundtrip(const CascadeRun& run);

}  // namespace bell
