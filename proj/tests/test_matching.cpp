#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "bell/errors.hpp"
#include "bell/matching.hpp"
#include "oracles.hpp"

using namespace bell;
using oracle::deg;

namespace {

PairRun run(std::uint64_t n, Label l, double tl_deg, Label r, double tr_deg, std::uint64_t seed) {
  SourceConfig c;
  c.n_pairs = n;
  c.theta_left = deg(tl_deg);
  c.theta_right = deg(tr_deg);
  c.seed = seed;
  c.left_label = l;
  c.right_label = r;
  return sample_run(c);
}

PairRun hand_run(std::vector<std::int8_t> left, std::vector<std::int8_t> right, Label l = Label::a,
                 Label r = Label::b) {
  SourceConfig c;
  c.n_pairs = left.size();
  c.left_label = l;
  c.right_label = r;
  return PairRun{SpinStream(std::move(left), 0, l), SpinStream(std::move(right), 0, r), c};
}

double tol(std::size_t n) { return 4.0 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST_CASE("greedy trace") {
  const auto ref = hand_run({1, -1, 1}, {1, 1, 1});
  const auto other = hand_run({-1, 1, 1}, {1, -1, 1}, Label::a, Label::b_prime);
  const auto m = match_on_label(ref, other, Label::a);
  REQUIRE_FALSE(m.degenerate());
  CHECK(m.retained == 3);
  CHECK(m.retention_fraction == 1.0);
  CHECK(m.row_sources[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(std::vector<std::size_t>(m.permutation().begin(), m.permutation().end()) ==
        std::vector<std::size_t>{1, 0, 2});
  // b' carried along with its a
  const auto& bp = m.aligned->stream(Label::b_prime);
  CHECK(bp[0] == -1);
  CHECK(bp[1] == 1);
  CHECK(bp[2] == 1);
}

TEST_CASE("no common values is degenerate") {
  const auto m = match_on_label(hand_run({1, 1}, {1, 1}), hand_run({-1, -1}, {1, 1}, Label::a, Label::b_prime),
                                Label::a);
  CHECK(m.degenerate());
  CHECK(m.retained == 0);
  CHECK(m.retention_fraction == 0.0);
  CHECK(m.dropped_from_each == std::vector<std::size_t>{2, 2});
}

TEST_CASE("greedy pairs are in-order per value class and maximal") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = oracle::random_spins(rng, 1 + rng() % 300);
    const auto y = oracle::random_spins(rng, 1 + rng() % 300);
    const auto pairs = greedy_fifo_pairs(x, y);
    const auto plus_x = std::count(x.begin(), x.end(), 1), plus_y = std::count(y.begin(), y.end(), 1);
    const auto minus_x = static_cast<std::ptrdiff_t>(x.size()) - plus_x;
    const auto minus_y = static_cast<std::ptrdiff_t>(y.size()) - plus_y;
    CHECK(static_cast<std::ptrdiff_t>(pairs.size()) == std::min(plus_x, plus_y) + std::min(minus_x, minus_y));
    std::map<int, std::size_t> last_other;
    std::vector<bool> used(y.size(), false);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const auto [i, j] = pairs[r];
      REQUIRE(x[i] == y[j]);
      REQUIRE_FALSE(used[j]);
      used[j] = true;
      if (r > 0) REQUIRE(pairs[r - 1].first < i);
      if (last_other.count(x[i])) REQUIRE(last_other[x[i]] < j);
      last_other[x[i]] = j;
    }
  }
}

TEST_CASE("matched triple: sources, identity and permutation-invariant means") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto ab = run(20000, Label::a, 0, Label::b, 60, seed);
    const auto abp = run(20000 - 37 * seed, Label::a, 0, Label::b_prime, 120, seed + 100);
    const auto m = build_triple(ab, abp);
    REQUIRE_FALSE(m.degenerate());
    const auto& set = *m.aligned;
    CHECK(check_identity(set).holds);
    CHECK(m.retained == set.size());
    CHECK(m.dropped_from_each[0] == ab.size() - m.retained);
    CHECK(m.dropped_from_each[1] == abp.size() - m.retained);
    CHECK(m.retention_fraction == doctest::Approx(double(m.retained) / double(abp.size())));
    // every row is literally a row of the inputs
    for (std::size_t r = 0; r < set.size(); ++r) {
      const auto i = m.row_sources[0][r], j = m.row_sources[1][r];
      REQUIRE(set.stream(Label::a)[r] == ab.left[i]);
      REQUIRE(set.stream(Label::b)[r] == ab.right[i]);
      REQUIRE(set.stream(Label::b_prime)[r] == abp.right[j]);
      REQUIRE(abp.left[j] == ab.left[i]);
    }
    // <ab> on retained rows equals <ab> of those same input pairs
    const auto kept = ab.left.gather(m.row_sources[0]);
    const auto kept_b = ab.right.gather(m.row_sources[0]);
    CHECK(correlation(kept, kept_b).exact_numerator == correlation(set.stream(Label::a), set.stream(Label::b)).exact_numerator);
    const auto kept_bp = abp.right.gather(m.row_sources[1]);
    const auto kept_abp = abp.left.gather(m.row_sources[1]);
    CHECK(correlation(kept_abp, kept_bp).exact_numerator ==
          correlation(set.stream(Label::a), set.stream(Label::b_prime)).exact_numerator);
  }
}

TEST_CASE("matched triple follows the conditional-independence oracle") {
  const double expected = oracle::matched_triple_bbp(0, deg(60), deg(120));
  CHECK(expected == doctest::Approx(-0.25).epsilon(1e-12));
  const auto m = build_triple(run(1'000'000, Label::a, 0, Label::b, 60, 5),
                              run(1'000'000, Label::a, 0, Label::b_prime, 120, 6));
  const auto& s = *m.aligned;
  const double t = tol(m.retained);
  CHECK(std::abs(correlation(s.stream(Label::b), s.stream(Label::b_prime)).value - expected) <= t);
  CHECK(std::abs(correlation(s.stream(Label::a), s.stream(Label::b)).value + 0.5) <= t);
  CHECK(std::abs(correlation(s.stream(Label::a), s.stream(Label::b_prime)).value - 0.5) <= t);
  CHECK(m.retention_fraction >= 0.99);
  const auto e = eval_inequality3(correlation(s.stream(Label::a), s.stream(Label::b)).value,
                                  correlation(s.stream(Label::a), s.stream(Label::b_prime)).value,
                                  correlation(s.stream(Label::b), s.stream(Label::b_prime)).value);
  CHECK(e.satisfied);
}

TEST_CASE("quadruple matching at the CHSH geometry") {
  const double ta = 0, tap = 90, tb = 45, tbp = 315;
  const auto oracle_m = oracle::matched_quadruple(deg(ta), deg(tap), deg(tb), deg(tbp));
  const std::size_t n = 1'000'000;
  const auto ab = run(n, Label::a, ta, Label::b, tb, 11);
  const auto abp = run(n, Label::a, ta, Label::b_prime, tbp, 12);
  const auto apb = run(n, Label::a_prime, tap, Label::b, tb, 13);

  for (auto order : {MatchOrder::a_then_b, MatchOrder::b_then_a}) {
    const auto m = build_quadruple(ab, abp, apb, order);
    REQUIRE_FALSE(m.degenerate());
    const auto& s = *m.aligned;
    CHECK(check_identity(s).holds);
    CHECK(m.row_sources.size() == 3);
    for (std::size_t r = 0; r < s.size(); r += 997) {
      REQUIRE(s.stream(Label::b_prime)[r] == abp.right[m.row_sources[1][r]]);
      REQUIRE(s.stream(Label::a_prime)[r] == apb.left[m.row_sources[2][r]]);
    }
    const auto c = [&](Label x, Label y) { return correlation(s.stream(x), s.stream(y)).value; };
    const double t = tol(m.retained);
    CHECK(std::abs(c(Label::a_prime, Label::b_prime) - oracle_m.apbp) <= t);
    CHECK(std::abs(c(Label::a, Label::b) - oracle_m.ab) <= t);
    const auto e = eval_inequality4(c(Label::a, Label::b), c(Label::a, Label::b_prime), c(Label::a_prime, Label::b),
                                    c(Label::a_prime, Label::b_prime));
    CHECK(e.satisfied);
    CHECK(e.lhs <= 2.0);
    CHECK(m.retention_fraction >= 0.99);
  }
  // the induced value is nowhere near the direct -cos value
  CHECK(std::abs(oracle_m.apbp + std::cos(deg(tap - tbp))) > 0.5);
}

TEST_CASE("overdetermination report") {
  const std::size_t n = 200'000;
  const auto quad = build_quadruple(run(n, Label::a, 0, Label::b, 45, 1), run(n, Label::a, 0, Label::b_prime, 315, 2),
                                    run(n, Label::a_prime, 90, Label::b, 45, 3));
  const auto direct = run(n, Label::a_prime, 90, Label::b_prime, 315, 4);
  const auto r = overdetermination_report(quad, direct);
  CHECK(std::abs(r.direct_apbp.value - std::sqrt(0.5)) <= tol(n));
  CHECK(std::abs(r.difference) > 0.5);
  CHECK(r.with_induced.satisfied);
  CHECK_FALSE(r.with_direct.satisfied);
  CHECK(r.with_direct.lhs > 2.7);
  CHECK_FALSE(r.direct_realizable);
  CHECK(r.note.find("not realizable") != std::string::npos);

  const auto again = overdetermination_report(quad, direct);
  CHECK(again.difference == r.difference);
  CHECK(again.note == r.note);

  CHECK_THROWS_AS(overdetermination_report(quad, run(100, Label::a_prime, 80, Label::b_prime, 315, 4)),
                  AngleMismatch);
}

TEST_CASE("collinear overdetermination is consistent") {
  const std::size_t n = 100'000;
  const auto quad = build_quadruple(run(n, Label::a, 30, Label::b, 30, 1), run(n, Label::a, 30, Label::b_prime, 30, 2),
                                    run(n, Label::a_prime, 30, Label::b, 30, 3));
  const auto r = overdetermination_report(quad, run(n, Label::a_prime, 30, Label::b_prime, 30, 4));
  CHECK(r.induced_apbp.value == doctest::Approx(-1.0));
  CHECK(r.direct_apbp.value == doctest::Approx(-1.0));
  CHECK(std::abs(r.difference) <= tol(n));
  CHECK(r.direct_realizable);
}

TEST_CASE("matching errors") {
  const auto ab = run(100, Label::a, 0, Label::b, 60, 1);
  CHECK_THROWS_AS(build_triple(ab, run(100, Label::a, 10, Label::b_prime, 120, 2)), AngleMismatch);
  CHECK_THROWS_AS(build_triple(ab, ab), InvalidArgument);
  CHECK_THROWS_AS(match_on_label(ab, run(100, Label::a_prime, 0, Label::b_prime, 0, 2), Label::a), InvalidArgument);
  CHECK_THROWS_AS(match_on_label(ab, run(100, Label::a, 0, Label::b, 60, 2), Label::a), InvalidArgument);
}

TEST_CASE("triple matched on b") {
  const auto ab = run(5000, Label::a, 0, Label::b, 60, 1);
  const auto apb = run(5000, Label::a_prime, 100, Label::b, 60, 2);
  const auto m = match_on_label(ab, apb, Label::b);
  REQUIRE_FALSE(m.degenerate());
  CHECK(m.aligned->triple_roles().shared->label() == Label::b);
  CHECK(check_identity(*m.aligned).holds);
}
