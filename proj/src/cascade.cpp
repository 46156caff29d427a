#include "bell/cascade.hpp"

#include <cmath>

#include "bell/errors.hpp"
#include "bell/kernels.hpp"

namespace bell {

CascadeConfig validated(CascadeConfig config) {
  if (config.n_pairs < 1) throw InvalidArgument("n_pairs must be >= 1");
  config.theta_a = canonical_angle(config.theta_a);
  config.theta_a_prime = canonical_angle(config.theta_a_prime);
  config.theta_b = canonical_angle(config.theta_b);
  config.theta_b_prime = canonical_angle(config.theta_b_prime);
  return config;
}

std::uint8_t spot_index(std::int8_t first, std::int8_t second) {
  if ((first != 1 && first != -1) || (second != 1 && second != -1)) {
    throw InvalidArgument("spins must be +1 or -1");
  }
  return static_cast<std::uint8_t>(2 * (first < 0) + (second < 0));
}

std::pair<std::int8_t, std::int8_t> decode_spot(std::uint8_t spot) {
  if (spot > 3) throw InvalidArgument("spot index must be in 0..3");
  return {static_cast<std::int8_t>(spot & 2 ? -1 : 1), static_cast<std::int8_t>(spot & 1 ? -1 : 1)};
}

double sequential_flip_probability(double theta_first, double theta_second) {
  const double s = std::sin(0.5 * (theta_second - theta_first));
  return s * s;
}

CascadeRun sample_cascade(const CascadeConfig& raw) {
  const auto config = validated(raw);
  const double half = 0.5 * (config.theta_a - config.theta_b);
  const CascadeParams params{
      {config.seed, std::cos(half) * std::cos(half)},
      sequential_flip_probability(config.theta_a, config.theta_a_prime),
      sequential_flip_probability(config.theta_b, config.theta_b_prime),
  };
  const auto n = config.n_pairs;
  std::vector<std::int8_t> a(n), ap(n), b(n), bp(n);
  parallel::sample_cascade(params, 0, a, ap, b, bp);

  std::vector<std::uint8_t> left_spots(n), right_spots(n);
  for (std::size_t i = 0; i < n; ++i) {
    left_spots[i] = spot_index(a[i], ap[i]);
    right_spots[i] = spot_index(b[i], bp[i]);
  }

  std::vector<SpinStream> streams;
  streams.emplace_back(std::move(a), config.theta_a, Label::a, config.seed);
  streams.emplace_back(std::move(ap), config.theta_a_prime, Label::a_prime, config.seed);
  streams.emplace_back(std::move(b), config.theta_b, Label::b, config.seed);
  streams.emplace_back(std::move(bp), config.theta_b_prime, Label::b_prime, config.seed);
  return CascadeRun{AlignedSet(std::move(streams), Provenance::cascade_retrodicted),
                    std::move(left_spots), std::move(right_spots), config};
}

CascadePrediction predict_cascade(const CascadeConfig& c) {
  const double ab = -std::cos(c.theta_a - c.theta_b);
  const double aap = std::cos(c.theta_a - c.theta_a_prime);
  const double bbp = std::cos(c.theta_b - c.theta_b_prime);
  return {ab, ab * bbp, aap * ab, aap * ab * bbp, aap, bbp};
}

const PairCorrelation& CorrelationReport::pair(Label x, Label y) const {
  for (const auto& p : pairs) {
    if ((p.x == x && p.y == y) || (p.x == y && p.y == x)) return p;
  }
  throw InvalidArgument("pair not in report");
}

CorrelationReport cascade_correlations(const CascadeRun& run) {
  const auto& s = run.aligned;
  const auto predicted = predict_cascade(run.config);
  auto entry = [&](Label x, Label y, double p) {
    return PairCorrelation{x, y, correlation(s.stream(x), s.stream(y)), p};
  };

  CorrelationReport report;
  report.pairs = {
      entry(Label::a, Label::b, predicted.ab),
      entry(Label::a, Label::b_prime, predicted.abp),
      entry(Label::a_prime, Label::b, predicted.apb),
      entry(Label::a_prime, Label::b_prime, predicted.apbp),
      entry(Label::a, Label::a_prime, predicted.aap),
      entry(Label::b, Label::b_prime, predicted.bbp),
  };
  report.identity = check_identity(s);
  report.chsh_empirical = eval_inequality4(report.pairs[0].empirical.value, report.pairs[1].empirical.value,
                                           report.pairs[2].empirical.value, report.pairs[3].empirical.value);
  report.chsh_predicted = eval_inequality4(predicted.ab, predicted.abp, predicted.apb, predicted.apbp);
  report.prediction_source = "sequential spin-1/2 measurement law, product of cosines";
  return report;
}

bool spots_roundtrip(const CascadeRun& run) {
  const auto& s = run.aligned;
  const auto a = s.stream(Label::a).outcomes();
  const auto ap = s.stream(Label::a_prime).outcomes();
  const auto b = s.stream(Label::b).outcomes();
  const auto bp = s.stream(Label::b_prime).outcomes();
  if (run.left_spots.size() != a.size() || run.right_spots.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (run.left_spots[i] > 3 || run.right_spots[i] > 3) return false;
    if (decode_spot(run.left_spots[i]) != std::pair{a[i], ap[i]}) return false;
    if (decode_spot(run.right_spots[i]) != std::pair{b[i], bp[i]}) return false;
  }
  return true;
}

}  // namespace bell
