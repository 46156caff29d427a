#include "bell/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "bell/detail/simplex.hpp"
#include "bell/errors.hpp"

namespace bell {

namespace {

constexpr double kPointTolerance = 1e-9;

template <class T>
using Matrix = std::vector<std::vector<T>>;

void require_unit_interval(double v) {
  if (!(v >= -1.0 && v <= 1.0)) throw InvalidArgument("correlation outside [-1, 1]");
}

void require_unit_interval(const Rational& v) {
  if (v < -1 || v > 1) throw InvalidArgument("correlation outside [-1, 1]");
}

// Rows: normalisation, then one row per constrained correlation slot.
template <class T>
void base_constraints(PointKind kind, std::span<const T> values, Matrix<T>& a, std::vector<T>& b) {
  const auto atoms = atom_count(kind);
  a.assign(1, std::vector<T>(atoms, T(1)));
  b.assign(1, T(1));
  for (std::size_t slot = 0; slot < values.size(); ++slot) {
    const auto [x, y] = correlation_streams(kind, slot);
    std::vector<T> row(atoms);
    for (std::size_t k = 0; k < atoms; ++k) row[k] = T(atom_sign(kind, k, x) * atom_sign(kind, k, y));
    a.push_back(std::move(row));
    b.push_back(values[slot]);
  }
}

// Feasibility plus the witness minimising max_k w_k:
//   variables (w_0..w_{n-1}, t, s_0..s_{n-1}),  w_k - t + s_k = 0,  minimise t.
template <class T>
std::optional<std::vector<T>> spread_witness(PointKind kind, std::span<const T> values) {
  Matrix<T> base;
  std::vector<T> rhs;
  base_constraints(kind, values, base, rhs);
  const auto n = atom_count(kind);
  const auto width = 2 * n + 1;

  Matrix<T> a;
  for (auto& row : base) {
    row.resize(width, T(0));
    a.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<T> row(width, T(0));
    row[k] = T(1);
    row[n] = T(-1);
    row[n + 1 + k] = T(1);
    a.push_back(std::move(row));
    rhs.push_back(T(0));
  }
  std::vector<T> cost(width, T(0));
  cost[n] = T(1);

  auto solution = detail::solve_lp(a, rhs, cost);
  if (solution.status != detail::LpStatus::optimal) return std::nullopt;
  solution.x.resize(n);
  return solution.x;
}

template <class T>
struct Extremes {
  T min, max;
  std::vector<T> witness_min, witness_max;
};

// Range of the last correlation slot given all the others.
template <class T>
std::optional<Extremes<T>> last_slot_range(PointKind kind, std::span<const T> given) {
  Matrix<T> a;
  std::vector<T> b;
  base_constraints(kind, given, a, b);
  const auto n = atom_count(kind);
  const auto [x, y] = correlation_streams(kind, correlation_count(kind) - 1);
  std::vector<T> up(n), down(n);
  for (std::size_t k = 0; k < n; ++k) {
    up[k] = T(atom_sign(kind, k, x) * atom_sign(kind, k, y));
    down[k] = T(-up[k]);
  }
  auto lo = detail::solve_lp(a, b, up);
  if (lo.status != detail::LpStatus::optimal) return std::nullopt;
  auto hi = detail::solve_lp(a, b, down);
  return Extremes<T>{lo.objective, T(-hi.objective), std::move(lo.x), std::move(hi.x)};
}

std::vector<double> to_doubles(const std::vector<Rational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

std::vector<FacetViolation> violated(const CorrelationPoint& point) {
  std::vector<FacetViolation> out;
  for (const auto& facet : polytope_facets(point.kind())) {
    if (point.is_exact()) {
      Rational lhs = 0;
      for (std::size_t p = 0; p < facet.coefficients.size(); ++p) {
        lhs += Rational(static_cast<long>(facet.coefficients[p])) * point.exact_values()[p];
      }
      const Rational slack = Rational(static_cast<long>(facet.bound)) - lhs;
      if (sgn(slack) < 0) out.push_back({facet, to_double(slack)});
    } else {
      double lhs = 0.0;
      for (std::size_t p = 0; p < facet.coefficients.size(); ++p) {
        lhs += static_cast<double>(facet.coefficients[p]) * point.values()[p];
      }
      const double slack = static_cast<double>(facet.bound) - lhs;
      if (slack < 0.0) out.push_back({facet, slack});
    }
  }
  return out;
}

// One-dimensional null space of a d x (d+1) rational matrix, if the rank is d.
std::optional<std::vector<Rational>> null_vector(Matrix<Rational> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational scale = m[r][c];
    for (auto& v : m[r]) v /= scale;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational factor = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  if (pivot_cols.size() + 1 != cols) return std::nullopt;
  std::size_t free_col = 0;
  while (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) ++free_col;
  std::vector<Rational> v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][free_col];
  return v;
}

Facet integer_facet(const std::vector<Rational>& normal, const Rational& bound) {
  mpz_class lcm = 1;
  for (const auto& v : normal) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), bound.get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& v : normal) ints.push_back(mpz_class(v * lcm));
  ints.push_back(mpz_class(bound * lcm));
  mpz_class g = 0;
  for (const auto& v : ints) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  Facet facet;
  for (std::size_t i = 0; i + 1 < ints.size(); ++i) facet.coefficients.push_back(mpz_class(ints[i] / g).get_si());
  facet.bound = mpz_class(ints.back() / g).get_si();
  return facet;
}

std::vector<Facet> enumerate_facets(const std::vector<std::vector<int>>& vertices) {
  const std::size_t dim = vertices.front().size();
  const std::size_t count = vertices.size();
  std::vector<Facet> facets;

  std::vector<bool> chosen(count, false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(dim), true);
  do {
    Matrix<Rational> m;
    for (std::size_t v = 0; v < count; ++v) {
      if (!chosen[v]) continue;
      std::vector<Rational> row;
      for (int x : vertices[v]) row.emplace_back(x);
      row.emplace_back(-1);
      m.push_back(std::move(row));
    }
    auto solution = null_vector(std::move(m));
    if (!solution) continue;
    std::vector<Rational> normal(solution->begin(), solution->end() - 1);
    Rational bound = solution->back();

    bool below = true, above = true, strict = false;
    for (const auto& vertex : vertices) {
      Rational side = -bound;
      for (std::size_t p = 0; p < dim; ++p) side += normal[p] * vertex[p];
      below = below && sgn(side) <= 0;
      above = above && sgn(side) >= 0;
      strict = strict || sgn(side) != 0;
    }
    if (!strict || (!below && !above)) continue;
    if (above) {
      for (auto& v : normal) v = -v;
      bound = -bound;
    }
    auto facet = integer_facet(normal, bound);
    if (std::find(facets.begin(), facets.end(), facet) == facets.end()) facets.push_back(std::move(facet));
  } while (std::prev_permutation(chosen.begin(), chosen.end()));

  std::sort(facets.begin(), facets.end(), [](const Facet& l, const Facet& r) {
    return std::tie(l.coefficients, l.bound) > std::tie(r.coefficients, r.bound);
  });
  return facets;
}

CorrelationBounds to_bounds(Extremes<double> e) {
  CorrelationBounds out;
  out.min = e.min;
  out.max = e.max;
  out.witness_min = std::move(e.witness_min);
  out.witness_max = std::move(e.witness_max);
  return out;
}

CorrelationBounds to_bounds(Extremes<Rational> e) {
  CorrelationBounds out;
  out.exact = true;
  out.min = to_double(e.min);
  out.max = to_double(e.max);
  out.exact_min = e.min;
  out.exact_max = e.max;
  out.witness_min = to_doubles(e.witness_min);
  out.witness_max = to_doubles(e.witness_max);
  out.exact_witness_min = std::move(e.witness_min);
  out.exact_witness_max = std::move(e.witness_max);
  return out;
}

}  // namespace

std::size_t stream_count(PointKind kind) { return kind == PointKind::triple ? 3 : 4; }
std::size_t atom_count(PointKind kind) { return std::size_t{1} << stream_count(kind); }
std::size_t correlation_count(PointKind kind) { return kind == PointKind::triple ? 3 : 4; }

std::pair<std::size_t, std::size_t> correlation_streams(PointKind kind, std::size_t slot) {
  static constexpr std::pair<std::size_t, std::size_t> kTriple[] = {{0, 1}, {0, 2}, {1, 2}};
  static constexpr std::pair<std::size_t, std::size_t> kQuadruple[] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  if (slot >= correlation_count(kind)) throw InvalidArgument("correlation slot out of range");
  return kind == PointKind::triple ? kTriple[slot] : kQuadruple[slot];
}

int atom_sign(PointKind kind, std::size_t atom, std::size_t stream) {
  const auto d = stream_count(kind);
  return (atom >> (d - 1 - stream)) & 1u ? -1 : 1;
}

std::vector<int> atom_vertex(PointKind kind, std::size_t atom) {
  std::vector<int> out;
  for (std::size_t slot = 0; slot < correlation_count(kind); ++slot) {
    const auto [x, y] = correlation_streams(kind, slot);
    out.push_back(atom_sign(kind, atom, x) * atom_sign(kind, atom, y));
  }
  return out;
}

CorrelationPoint::CorrelationPoint(PointKind kind, std::vector<double> values,
                                   std::optional<std::vector<Rational>> exact)
    : kind_(kind), values_(std::move(values)), exact_(std::move(exact)) {
  if (values_.size() != correlation_count(kind_)) throw InvalidArgument("wrong number of correlations");
  for (double v : values_) require_unit_interval(v);
  if (exact_) {
    for (const auto& v : *exact_) require_unit_interval(v);
  }
}

CorrelationPoint CorrelationPoint::triple(double ab, double abp, double bbp) {
  return CorrelationPoint(PointKind::triple, {ab, abp, bbp}, std::nullopt);
}

CorrelationPoint CorrelationPoint::quadruple(double ab, double abp, double apb, double apbp) {
  return CorrelationPoint(PointKind::quadruple, {ab, abp, apb, apbp}, std::nullopt);
}

CorrelationPoint CorrelationPoint::exact(PointKind kind, std::vector<Rational> values) {
  for (auto& v : values) v.canonicalize();
  auto doubles = to_doubles(values);
  return CorrelationPoint(kind, std::move(doubles), std::move(values));
}

const std::vector<std::vector<int>>& polytope_vertices(PointKind kind) {
  static const auto build = [](PointKind k) {
    std::vector<std::vector<int>> out;
    for (std::size_t atom = 0; atom < atom_count(k); ++atom) {
      auto v = atom_vertex(k, atom);
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
    return out;
  };
  static const auto triple = build(PointKind::triple);
  static const auto quadruple = build(PointKind::quadruple);
  return kind == PointKind::triple ? triple : quadruple;
}

const std::vector<Facet>& polytope_facets(PointKind kind) {
  static const auto triple = enumerate_facets(polytope_vertices(PointKind::triple));
  static const auto quadruple = enumerate_facets(polytope_vertices(PointKind::quadruple));
  return kind == PointKind::triple ? triple : quadruple;
}

bool hull_contains(const CorrelationPoint& point) {
  for (const auto& facet : polytope_facets(point.kind())) {
    if (point.is_exact()) {
      Rational lhs = 0;
      for (std::size_t p = 0; p < facet.coefficients.size(); ++p) {
        lhs += Rational(static_cast<long>(facet.coefficients[p])) * point.exact_values()[p];
      }
      if (lhs > facet.bound) return false;
    } else {
      double lhs = 0.0;
      for (std::size_t p = 0; p < facet.coefficients.size(); ++p) {
        lhs += static_cast<double>(facet.coefficients[p]) * point.values()[p];
      }
      if (lhs > static_cast<double>(facet.bound) + kPointTolerance) return false;
    }
  }
  return true;
}

FeasibilityResult feasible(const CorrelationPoint& point) {
  FeasibilityResult result;
  result.kind = point.kind();
  result.exact = point.is_exact();
  if (point.is_exact()) {
    auto witness = spread_witness<Rational>(point.kind(), point.exact_values());
    result.feasible = witness.has_value();
    if (witness) {
      result.witness = to_doubles(*witness);
      result.exact_witness = std::move(*witness);
    }
  } else {
    auto witness = spread_witness<double>(point.kind(), point.values());
    result.feasible = witness.has_value();
    if (witness) result.witness = std::move(*witness);
  }
  if (!result.feasible) result.violated_facets = violated(point);
  return result;
}

FeasibilityResult feasible_triple(const CorrelationPoint& point) {
  if (point.kind() != PointKind::triple) throw InvalidArgument("feasible_triple needs 3 correlations");
  return feasible(point);
}

FeasibilityResult feasible_quadruple(const CorrelationPoint& point) {
  if (point.kind() != PointKind::quadruple) throw InvalidArgument("feasible_quadruple needs 4 correlations");
  return feasible(point);
}

bool lp_feasible(PointKind kind, std::span<const double> values) {
  Matrix<double> a;
  std::vector<double> b;
  base_constraints(kind, values, a, b);
  return detail::lp_feasible(a, b);
}

CorrelationBounds third_correlation_bounds(double cab, double cabp) {
  require_unit_interval(cab);
  require_unit_interval(cabp);
  const double given[] = {cab, cabp};
  auto range = last_slot_range<double>(PointKind::triple, given);
  if (!range) throw std::logic_error("every (ab, ab') pair in [-1,1]^2 extends to a triple");
  return to_bounds(std::move(*range));
}

CorrelationBounds third_correlation_bounds(const Rational& cab, const Rational& cabp) {
  require_unit_interval(cab);
  require_unit_interval(cabp);
  const Rational given[] = {cab, cabp};
  auto range = last_slot_range<Rational>(PointKind::triple, given);
  if (!range) throw std::logic_error("every (ab, ab') pair in [-1,1]^2 extends to a triple");
  return to_bounds(std::move(*range));
}

CorrelationBounds induced_fourth_report(double cab, double cabp, double capb) {
  for (double v : {cab, cabp, capb}) require_unit_interval(v);
  const double given[] = {cab, cabp, capb};
  auto range = last_slot_range<double>(PointKind::quadruple, given);
  if (!range) throw Infeasible("no +-1 streams realize the three given correlations");
  return to_bounds(std::move(*range));
}

CorrelationBounds induced_fourth_report(const Rational& cab, const Rational& cabp, const Rational& capb) {
  for (const auto* v : {&cab, &cabp, &capb}) require_unit_interval(*v);
  const Rational given[] = {cab, cabp, capb};
  auto range = last_slot_range<Rational>(PointKind::quadruple, given);
  if (!range) throw Infeasible("no +-1 streams realize the three given correlations");
  return to_bounds(std::move(*range));
}

std::vector<Rational> witness_correlations(PointKind kind, std::span<const Rational> witness) {
  if (witness.size() != atom_count(kind)) throw InvalidArgument("witness has wrong length");
  std::vector<Rational> out(correlation_count(kind), Rational(0));
  for (std::size_t k = 0; k < witness.size(); ++k) {
    const auto v = atom_vertex(kind, k);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += witness[k] * v[p];
  }
  return out;
}

}  // namespace bell
