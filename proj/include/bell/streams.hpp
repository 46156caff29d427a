#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bell {

/// Detector label. a, a' sit on the left arm; b, b' on the right.
enum class Label : std::uint8_t { a, a_prime, b, b_prime };

std::string_view to_string(Label label);
/// File-name-safe form: "a", "a_prime", "b", "b_prime".
std::string_view file_stem(Label label);
/// Accepts both the display form ("b'") and the file stem ("b_prime").
Label parse_label(std::string_view text);
bool is_left(Label label);

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Maps any finite angle into [0, 2*pi).
double canonical_angle(double radians);

/// Equality of canonical angles up to 1e-9 rad, modulo 2*pi.
bool same_angle(double lhs, double rhs);

/// An immutable finite list of +-1 outcomes recorded at one detector setting.
/// Copies share the outcome buffer.
class SpinStream {
 public:
  SpinStream(std::vector<std::int8_t> outcomes, double angle_rad, Label label,
             std::optional<std::uint64_t> seed = std::nullopt);

  std::span<const std::int8_t> outcomes() const noexcept { return *data_; }
  std::size_t size() const noexcept { return data_->size(); }
  std::int8_t operator[](std::size_t i) const noexcept { return (*data_)[i]; }

  double angle() const noexcept { return angle_; }
  Label label() const noexcept { return label_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  SpinStream negated() const;
  /// Outcomes at the given indices, in the given order. Metadata is kept.
  SpinStream gather(std::span<const std::size_t> indices) const;

  friend bool operator==(const SpinStream& lhs, const SpinStream& rhs);

 private:
  std::shared_ptr<const std::vector<std::int8_t>> data_;
  double angle_;
  Label label_;
  std::optional<std::uint64_t> seed_;
};

enum class Provenance : std::uint8_t { simulated_jointly, matched_from_runs, cascade_retrodicted, supplied };

std::string_view to_string(Provenance provenance);

/// Three or four equal-length streams with distinct labels, all indexed by the
/// same realization i. A quadruple carries every label; a triple has one stream
/// on one arm (the shared role) and two on the other.
class AlignedSet {
 public:
  AlignedSet(std::vector<SpinStream> streams, Provenance provenance);

  std::size_t size() const noexcept { return streams_.front().size(); }
  std::size_t arity() const noexcept { return streams_.size(); }
  bool is_triple() const noexcept { return streams_.size() == 3; }
  Provenance provenance() const noexcept { return provenance_; }

  const std::vector<SpinStream>& streams() const noexcept { return streams_; }
  bool contains(Label label) const noexcept;
  const SpinStream& stream(Label label) const;

  /// Triple roles in identity order (shared, first partner, second partner),
  /// e.g. (a, b, b') or (b, a, a'). Unprimed partner comes first.
  struct TripleRoles {
    const SpinStream* shared;
    const SpinStream* partner;
    const SpinStream* partner_prime;
  };
  TripleRoles triple_roles() const;

 private:
  std::vector<SpinStream> streams_;
  Provenance provenance_;
};

/// value == exact_numerator / count exactly.
struct CorrelationValue {
  std::int64_t exact_numerator = 0;
  std::int64_t count = 0;
  double value = 0.0;
};

/// Exact verdict for a finite-data identity, all terms over the common
/// denominator `scale` = N.
struct IdentityVerdict {
  std::int64_t lhs_numerator = 0;
  std::int64_t rhs_numerator = 0;
  std::int64_t scale = 0;
  bool holds = false;
  std::int64_t slack_numerator = 0;

  double slack() const noexcept {
    return static_cast<double>(slack_numerator) / static_cast<double>(scale);
  }
};

/// Evaluation of the limit-form inequality on real-valued correlations.
struct InequalityEvaluation {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double slack = 0.0;
};

inline constexpr double kInequalityTolerance = 1e-12;

CorrelationValue correlation(const SpinStream& x, const SpinStream& y);

/// |sum a*b' - sum a*b| <= N - sum b*b'.
IdentityVerdict check_identity3(const SpinStream& a, const SpinStream& b, const SpinStream& bp);

/// |sum a*b + sum a*b'| + |sum a'*b - sum a'*b'| <= 2N.
IdentityVerdict check_identity4(const SpinStream& a, const SpinStream& ap, const SpinStream& b,
                                const SpinStream& bp);

/// Dispatches on arity using the set's roles.
IdentityVerdict check_identity(const AlignedSet& set);

InequalityEvaluation eval_inequality3(double cab, double cabp, double cbbp);
InequalityEvaluation eval_inequality4(double cab, double cabp, double capb, double capbp);

}  // namespace bell
