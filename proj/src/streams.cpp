#include "bell/streams.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "bell/errors.hpp"
#include "bell/kernels.hpp"

namespace bell {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::a: return "a";
    case Label::a_prime: return "a'";
    case Label::b: return "b";
    case Label::b_prime: return "b'";
  }
  return "?";
}

std::string_view file_stem(Label label) {
  switch (label) {
    case Label::a: return "a";
    case Label::a_prime: return "a_prime";
    case Label::b: return "b";
    case Label::b_prime: return "b_prime";
  }
  return "?";
}

Label parse_label(std::string_view text) {
  if (text == "a") return Label::a;
  if (text == "a'" || text == "a_prime") return Label::a_prime;
  if (text == "b") return Label::b;
  if (text == "b'" || text == "b_prime") return Label::b_prime;
  throw InvalidArgument("unknown label '" + std::string(text) + "'");
}

bool is_left(Label label) { return label == Label::a || label == Label::a_prime; }

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::simulated_jointly: return "simulated-jointly";
    case Provenance::matched_from_runs: return "matched-from-runs";
    case Provenance::cascade_retrodicted: return "cascade-retrodicted";
    case Provenance::supplied: return "supplied";
  }
  return "?";
}

double canonical_angle(double radians) {
  if (!std::isfinite(radians)) throw InvalidArgument("angle must be finite");
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

bool same_angle(double lhs, double rhs) {
  const double d = std::fabs(canonical_angle(lhs) - canonical_angle(rhs));
  return std::min(d, kTwoPi - d) <= 1e-9;
}

SpinStream::SpinStream(std::vector<std::int8_t> outcomes, double angle_rad, Label label,
                       std::optional<std::uint64_t> seed)
    : angle_(canonical_angle(angle_rad)), label_(label), seed_(seed) {
  if (outcomes.empty()) throw InvalidArgument("spin stream must not be empty");
  const auto bad = std::find_if(outcomes.begin(), outcomes.end(),
                                [](std::int8_t v) { return v != 1 && v != -1; });
  if (bad != outcomes.end()) {
    throw InvalidArgument("spin stream element " + std::to_string(bad - outcomes.begin()) +
                          " is not +1 or -1");
  }
  data_ = std::make_shared<const std::vector<std::int8_t>>(std::move(outcomes));
}

SpinStream SpinStream::negated() const {
  std::vector<std::int8_t> out(data_->begin(), data_->end());
  for (auto& v : out) v = static_cast<std::int8_t>(-v);
  return SpinStream(std::move(out), angle_, label_, seed_);
}

SpinStream SpinStream::gather(std::span<const std::size_t> indices) const {
  std::vector<std::int8_t> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back((*data_).at(i));
  return SpinStream(std::move(out), angle_, label_, seed_);
}

bool operator==(const SpinStream& lhs, const SpinStream& rhs) {
  return lhs.label_ == rhs.label_ && lhs.angle_ == rhs.angle_ && lhs.seed_ == rhs.seed_ &&
         *lhs.data_ == *rhs.data_;
}

AlignedSet::AlignedSet(std::vector<SpinStream> streams, Provenance provenance)
    : streams_(std::move(streams)), provenance_(provenance) {
  if (streams_.size() != 3 && streams_.size() != 4) {
    throw InvalidArgument("aligned set needs 3 or 4 streams");
  }
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    if (streams_[i].size() != streams_.front().size()) {
      throw LengthMismatch("aligned streams must have equal length");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (streams_[i].label() == streams_[j].label()) {
        throw InvalidArgument("aligned set labels must be distinct");
      }
    }
  }
}

bool AlignedSet::contains(Label label) const noexcept {
  return std::any_of(streams_.begin(), streams_.end(),
                     [label](const SpinStream& s) { return s.label() == label; });
}

const SpinStream& AlignedSet::stream(Label label) const {
  for (const auto& s : streams_) {
    if (s.label() == label) return s;
  }
  throw InvalidArgument("aligned set has no stream labelled " + std::string(to_string(label)));
}

AlignedSet::TripleRoles AlignedSet::triple_roles() const {
  if (!is_triple()) throw InvalidArgument("not a triple");
  const auto left = std::count_if(streams_.begin(), streams_.end(),
                                  [](const SpinStream& s) { return is_left(s.label()); });
  const bool shared_on_left = left == 1;
  if (shared_on_left) {
    const auto& shared = contains(Label::a) ? stream(Label::a) : stream(Label::a_prime);
    return {&shared, &stream(Label::b), &stream(Label::b_prime)};
  }
  const auto& shared = contains(Label::b) ? stream(Label::b) : stream(Label::b_prime);
  return {&shared, &stream(Label::a), &stream(Label::a_prime)};
}

namespace {

void require_same_length(std::initializer_list<const SpinStream*> streams) {
  const auto n = (*streams.begin())->size();
  for (const auto* s : streams) {
    if (s->size() != n) throw LengthMismatch("streams have different lengths");
  }
}

std::int64_t sum(const SpinStream& x, const SpinStream& y) {
  return parallel::product_sum(x.outcomes(), y.outcomes());
}

void require_unit_interval(std::initializer_list<double> values) {
  for (double v : values) {
    if (!(v >= -1.0 && v <= 1.0)) throw InvalidArgument("correlation outside [-1, 1]");
  }
}

IdentityVerdict make_verdict(std::int64_t lhs, std::int64_t rhs, std::int64_t n) {
  return {lhs, rhs, n, lhs <= rhs, rhs - lhs};
}

InequalityEvaluation make_evaluation(double lhs, double rhs) {
  return {lhs, rhs, lhs <= rhs + kInequalityTolerance, rhs - lhs};
}

}  // namespace

CorrelationValue correlation(const SpinStream& x, const SpinStream& y) {
  require_same_length({&x, &y});
  const auto n = static_cast<std::int64_t>(x.size());
  const auto s = sum(x, y);
  return {s, n, static_cast<double>(s) / static_cast<double>(n)};
}

IdentityVerdict check_identity3(const SpinStream& a, const SpinStream& b, const SpinStream& bp) {
  require_same_length({&a, &b, &bp});
  const auto n = static_cast<std::int64_t>(a.size());
  const auto lhs = std::llabs(sum(a, bp) - sum(a, b));
  const auto rhs = n - sum(b, bp);
  return make_verdict(lhs, rhs, n);
}

IdentityVerdict check_identity4(const SpinStream& a, const SpinStream& ap, const SpinStream& b,
                                const SpinStream& bp) {
  require_same_length({&a, &ap, &b, &bp});
  const auto n = static_cast<std::int64_t>(a.size());
  const auto lhs = std::llabs(sum(a, b) + sum(a, bp)) + std::llabs(sum(ap, b) - sum(ap, bp));
  return make_verdict(lhs, 2 * n, n);
}

IdentityVerdict check_identity(const AlignedSet& set) {
  if (set.is_triple()) {
    const auto roles = set.triple_roles();
    return check_identity3(*roles.shared, *roles.partner, *roles.partner_prime);
  }
  return check_identity4(set.stream(Label::a), set.stream(Label::a_prime), set.stream(Label::b),
                         set.stream(Label::b_prime));
}

InequalityEvaluation eval_inequality3(double cab, double cabp, double cbbp) {
  require_unit_interval({cab, cabp, cbbp});
  return make_evaluation(std::fabs(cabp - cab), 1.0 - cbbp);
}

InequalityEvaluation eval_inequality4(double cab, double cabp, double capb, double capbp) {
  require_unit_interval({cab, cabp, capb, capbp});
  return make_evaluation(std::fabs(cab + cabp) + std::fabs(capb - capbp), 2.0);
}

}  // namespace bell
