#include <cmath>

#include "bell/errors.hpp"
#include "bell/feasibility.hpp"

namespace bell {

namespace {

std::size_t row_count(std::size_t points, ScanMode mode) {
  return mode == ScanMode::triple ? points * points : points * points * points;
}

// Row r of the grid, lexicographic in (a', b, b') with theta_a = 0.
ScanRow evaluate_row(std::size_t points, ScanMode mode, std::size_t r) {
  const double step = kTwoPi / static_cast<double>(points);
  ScanRow row;
  if (mode == ScanMode::triple) {
    row.theta_b = static_cast<double>(r / points) * step;
    row.theta_b_prime = static_cast<double>(r % points) * step;
    const double ab = -std::cos(row.theta_a - row.theta_b);
    const double abp = -std::cos(row.theta_a - row.theta_b_prime);
    const double bbp = -std::cos(row.theta_b - row.theta_b_prime);
    row.correlations = {ab, abp, bbp, 0.0};
    row.inequality = eval_inequality3(ab, abp, bbp);
    row.feasible = lp_feasible(PointKind::triple, std::span<const double>(row.correlations.data(), 3));
  } else {
    row.theta_a_prime = static_cast<double>(r / (points * points)) * step;
    row.theta_b = static_cast<double>((r / points) % points) * step;
    row.theta_b_prime = static_cast<double>(r % points) * step;
    const double ab = -std::cos(row.theta_a - row.theta_b);
    const double abp = -std::cos(row.theta_a - row.theta_b_prime);
    const double apb = -std::cos(row.theta_a_prime - row.theta_b);
    const double apbp = -std::cos(row.theta_a_prime - row.theta_b_prime);
    row.correlations = {ab, abp, apb, apbp};
    row.inequality = eval_inequality4(ab, abp, apb, apbp);
    row.feasible = lp_feasible(PointKind::quadruple, row.correlations);
  }
  return row;
}

ScanResult prepare(std::size_t points, ScanMode mode) {
  if (points < 2) throw InvalidArgument("scan needs at least 2 grid points per axis");
  ScanResult result;
  result.mode = mode;
  result.points_per_axis = points;
  result.rows.resize(row_count(points, mode));
  return result;
}

void summarize(ScanResult& result) {
  auto& s = result.summary;
  s = {};
  s.points = result.rows.size();
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    const auto& row = result.rows[r];
    s.violations += !row.inequality.satisfied;
    s.infeasible += !row.feasible;
    s.contradictions += !row.inequality.satisfied && row.feasible;
    if (r == 0 || row.inequality.lhs > s.max_lhs) {
      s.max_lhs = row.inequality.lhs;
      s.argmax_lhs = r;
    }
    if (r == 0 || row.inequality.slack < s.min_slack) {
      s.min_slack = row.inequality.slack;
      s.argmin_slack = r;
    }
  }
}

}  // namespace

namespace serial {

ScanResult angle_violation_scan(std::size_t points_per_axis, ScanMode mode) {
  auto result = prepare(points_per_axis, mode);
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    result.rows[r] = evaluate_row(points_per_axis, mode, r);
  }
  summarize(result);
  return result;
}

}  // namespace serial

namespace parallel {

ScanResult angle_violation_scan(std::size_t points_per_axis, ScanMode mode) {
  auto result = prepare(points_per_axis, mode);
  const auto n = static_cast<std::ptrdiff_t>(result.rows.size());
  auto* rows = result.rows.data();
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    rows[r] = evaluate_row(points_per_axis, mode, static_cast<std::size_t>(r));
  }
  summarize(result);
  return result;
}

}  // namespace parallel

ScanResult angle_violation_scan(std::size_t points_per_axis, ScanMode mode) {
  return parallel::angle_violation_scan(points_per_axis, mode);
}

}  // namespace bell
