#pragma once

// Dense two-phase tableau simplex for small standard-form programs
//
//     minimize c.x  subject to  A x = b,  x >= 0
//
// with Bland's rule, so it terminates on degenerate problems. Instantiated for
// exact rationals (every comparison exact) and for double (fixed tolerances).

#include <cmath>
#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace bell::detail {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  /// Phase-one residual above which a program is declared infeasible.
  static constexpr double kFeasibilityTolerance = 1e-9;
  static constexpr double kPivotTolerance = 1e-12;
  static bool positive(double x) { return x > kPivotTolerance; }
  static bool negative(double x) { return x < -kPivotTolerance; }
  static bool infeasible_residual(double x) { return x > kFeasibilityTolerance; }
};

template <>
struct ScalarTraits<mpq_class> {
  static bool positive(const mpq_class& x) { return sgn(x) > 0; }
  static bool negative(const mpq_class& x) { return sgn(x) < 0; }
  static bool infeasible_residual(const mpq_class& x) { return sgn(x) > 0; }
};

enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<T> x;
  T objective{};
};

template <class T>
class Tableau {
  using Traits = ScalarTraits<T>;

 public:
  Tableau(const std::vector<std::vector<T>>& a, const std::vector<T>& b)
      : rows_(a.size()), structural_(a.empty() ? 0 : a.front().size()) {
    const std::size_t cols = structural_ + rows_;
    cells_.assign(rows_, std::vector<T>(cols + 1, T(0)));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = Traits::negative(b[i]);
      for (std::size_t j = 0; j < structural_; ++j) cells_[i][j] = flip ? T(-a[i][j]) : a[i][j];
      cells_[i][structural_ + i] = T(1);
      cells_[i][cols] = flip ? T(-b[i]) : b[i];
      basis_[i] = structural_ + i;
    }
    alive_.assign(rows_, true);
  }

  /// Phase one: minimise the sum of artificials. Returns false if infeasible.
  bool phase_one() {
    std::vector<T> cost(width(), T(0));
    for (std::size_t i = 0; i < rows_; ++i) cost[structural_ + i] = T(1);
    set_objective(cost);
    run(width());
    if (Traits::infeasible_residual(T(-objective_[width()]))) return false;
    drive_out_artificials();
    return true;
  }

  /// Phase two over structural columns only. Returns false if unbounded.
  bool phase_two(const std::vector<T>& c) {
    std::vector<T> cost(width(), T(0));
    for (std::size_t j = 0; j < structural_; ++j) cost[j] = c[j];
    set_objective(cost);
    return run(structural_);
  }

  std::vector<T> solution() const {
    std::vector<T> x(structural_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (alive_[i] && basis_[i] < structural_) {
        x[basis_[i]] = Traits::negative(cells_[i][width()]) ? T(0) : cells_[i][width()];
      }
    }
    return x;
  }

 private:
  std::size_t width() const { return structural_ + rows_; }

  void set_objective(const std::vector<T>& cost) {
    objective_.assign(width() + 1, T(0));
    for (std::size_t j = 0; j < width(); ++j) objective_[j] = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!alive_[i]) continue;
      const T cb = cost[basis_[i]];
      if (!Traits::positive(cb) && !Traits::negative(cb)) continue;
      for (std::size_t j = 0; j <= width(); ++j) objective_[j] -= cb * cells_[i][j];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t entering = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (Traits::negative(objective_[j])) {
          entering = j;
          break;
        }
      }
      if (entering == allowed) return true;

      std::size_t leaving = rows_;
      T best_ratio{};
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!alive_[i] || !Traits::positive(cells_[i][entering])) continue;
        T ratio = cells_[i][width()] / cells_[i][entering];
        if (leaving == rows_ || Traits::negative(T(ratio - best_ratio)) ||
            (!Traits::positive(T(ratio - best_ratio)) && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T scale = cells_[r][c];
    for (auto& v : cells_[r]) v /= scale;
    auto eliminate = [&](std::vector<T>& row) {
      const T factor = row[c];
      if (!Traits::positive(factor) && !Traits::negative(factor)) return;
      for (std::size_t j = 0; j <= width(); ++j) row[j] -= factor * cells_[r][j];
    };
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r && alive_[i]) eliminate(cells_[i]);
    }
    eliminate(objective_);
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!alive_[i] || basis_[i] < structural_) continue;
      std::size_t column = structural_;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (Traits::positive(cells_[i][j]) || Traits::negative(cells_[i][j])) {
          column = j;
          break;
        }
      }
      if (column == structural_) {
        alive_[i] = false;  // redundant equality
      } else {
        pivot(i, column);
      }
    }
  }

  std::size_t rows_;
  std::size_t structural_;
  std::vector<std::vector<T>> cells_;
  std::vector<T> objective_;
  std::vector<std::size_t> basis_;
  std::vector<bool> alive_;
};

template <class T>
bool lp_feasible(const std::vector<std::vector<T>>& a, const std::vector<T>& b) {
  Tableau<T> tableau(a, b);
  return tableau.phase_one();
}

template <class T>
LpSolution<T> solve_lp(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                       const std::vector<T>& c) {
  LpSolution<T> out;
  Tableau<T> tableau(a, b);
  if (!tableau.phase_one()) return out;
  if (!tableau.phase_two(c)) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x = tableau.solution();
  out.objective = T(0);
  for (std::size_t j = 0; j < c.size(); ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace bell::detail
