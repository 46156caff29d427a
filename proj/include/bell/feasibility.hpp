#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bell/errors.hpp"
#include "bell/rational.hpp"
#include "bell/streams.hpp"

namespace bell {

class Infeasible : public Error {
 public:
  using Error::Error;
};

/// triple: streams (a, b, b'), correlations (ab, ab', bb').
/// quadruple: streams (a, a', b, b'), correlations (ab, ab', a'b, a'b').
enum class PointKind : std::uint8_t { triple, quadruple };

std::size_t stream_count(PointKind kind);
std::size_t atom_count(PointKind kind);
std::size_t correlation_count(PointKind kind);
/// Stream indices (x, y) of correlation slot p.
std::pair<std::size_t, std::size_t> correlation_streams(PointKind kind, std::size_t slot);

/// Outcome of stream j in deterministic atom k; atom 0 is all +1.
int atom_sign(PointKind kind, std::size_t atom, std::size_t stream);
/// Correlation vector produced by a deterministic atom.
std::vector<int> atom_vertex(PointKind kind, std::size_t atom);

/// A set of pairwise correlations. Points built from rationals are decided in
/// exact arithmetic; points built from doubles use a 1e-9 tolerance.
class CorrelationPoint {
 public:
  static CorrelationPoint triple(double ab, double abp, double bbp);
  static CorrelationPoint quadruple(double ab, double abp, double apb, double apbp);
  static CorrelationPoint exact(PointKind kind, std::vector<Rational> values);

  PointKind kind() const noexcept { return kind_; }
  std::span<const double> values() const noexcept { return values_; }
  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::vector<Rational>& exact_values() const { return exact_.value(); }

 private:
  CorrelationPoint(PointKind kind, std::vector<double> values, std::optional<std::vector<Rational>> exact);

  PointKind kind_;
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

/// sum coefficients[p] * x[p] <= bound, in lowest integer terms.
struct Facet {
  std::vector<std::int64_t> coefficients;
  std::int64_t bound = 0;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct FacetViolation {
  Facet facet;
  double slack = 0.0;  ///< bound - lhs, negative when violated
};

struct FeasibilityResult {
  PointKind kind = PointKind::triple;
  bool feasible = false;
  bool exact = false;
  /// Probability per atom. The spread-minimising witness is returned: the one
  /// with the smallest largest atom weight.
  std::vector<double> witness;
  std::vector<Rational> exact_witness;
  std::vector<FacetViolation> violated_facets;
};

struct CorrelationBounds {
  double min = 0.0;
  double max = 0.0;
  bool exact = false;
  Rational exact_min;
  Rational exact_max;
  std::vector<double> witness_min;  ///< atom weights attaining the minimum
  std::vector<double> witness_max;
  std::vector<Rational> exact_witness_min;
  std::vector<Rational> exact_witness_max;
};

/// Distinct correlation vectors of the deterministic atoms.
const std::vector<std::vector<int>>& polytope_vertices(PointKind kind);

/// Facets of the correlation polytope, derived by enumerating hyperplanes
/// through subsets of its vertices (nothing is hardcoded).
const std::vector<Facet>& polytope_facets(PointKind kind);

/// Membership via the enumerated facets.
bool hull_contains(const CorrelationPoint& point);

FeasibilityResult feasible_triple(const CorrelationPoint& point);
FeasibilityResult feasible_quadruple(const CorrelationPoint& point);
FeasibilityResult feasible(const CorrelationPoint& point);

/// Phase-one-only verdict for double points; used by the scans.
bool lp_feasible(PointKind kind, std::span<const double> values);

/// Range of <bb'> over all +-1 stream distributions with the given <ab>, <ab'>.
CorrelationBounds third_correlation_bounds(double cab, double cabp);
CorrelationBounds third_correlation_bounds(const Rational& cab, const Rational& cabp);

/// Range of <a'b'> given <ab>, <ab'>, <a'b>. Throws Infeasible if the three
/// values admit no +-1 streams.
CorrelationBounds induced_fourth_report(double cab, double cabp, double capb);
CorrelationBounds induced_fourth_report(const Rational& cab, const Rational& cabp, const Rational& capb);

/// Correlations produced by a witness: sum_k w_k * vertex_k.
std::vector<Rational> witness_correlations(PointKind kind, std::span<const Rational> witness);

// -- angle scans -------------------------------------------------------------

enum class ScanMode : std::uint8_t { triple, quadruple };

/// One grid point. theta_a is pinned to 0: the -cos law depends only on angle
/// differences. Angles are in radians; unused slots hold 0.
struct ScanRow {
  double theta_a = 0.0;
  double theta_a_prime = 0.0;
  double theta_b = 0.0;
  double theta_b_prime = 0.0;
  std::array<double, 4> correlations{};  ///< ab, ab', bb' (triple) or ab, ab', a'b, a'b'
  InequalityEvaluation inequality;
  bool feasible = false;
};

struct ScanSummary {
  std::size_t points = 0;
  std::size_t violations = 0;
  std::size_t infeasible = 0;
  /// Rows where the inequality is violated yet the point is feasible. Must be 0.
  std::size_t contradictions = 0;
  double max_lhs = 0.0;
  std::size_t argmax_lhs = 0;
  double min_slack = 0.0;
  std::size_t argmin_slack = 0;
};

struct ScanResult {
  ScanMode mode = ScanMode::triple;
  std::size_t points_per_axis = 0;
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

/// Grid angles are k * 2*pi / points_per_axis. Rows are ordered
/// lexicographically by (a', b, b'). points_per_axis >= 2.
ScanResult angle_violation_scan(std::size_t points_per_axis, ScanMode mode);

namespace serial {
ScanResult angle_violation_scan(std::size_t points_per_axis, ScanMode mode);
}
namespace parallel {
ScanResult angle_violation_scan(std::size_t points_per_axis, ScanMode mode);
}

}  // namespace bell
