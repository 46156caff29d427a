#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bell/errors.hpp"
#include "bell/streams.hpp"
#include "oracles.hpp"

using namespace bell;
using oracle::deg;

namespace {

SpinStream stream(std::vector<std::int8_t> v, Label label = Label::a, double angle = 0.0) {
  return SpinStream(std::move(v), angle, label);
}

}  // namespace

TEST_CASE("spin stream construction") {
  CHECK_THROWS_AS(stream({}), InvalidArgument);
  CHECK_THROWS_AS(stream({1, 0, -1}), InvalidArgument);
  CHECK_THROWS_AS(stream({1, 2}), InvalidArgument);

  const auto s = SpinStream({1, -1}, -oracle::kPi / 2, Label::b_prime, 7u);
  CHECK(s.size() == 2);
  CHECK(s.angle() == doctest::Approx(3 * oracle::kPi / 2).epsilon(1e-15));
  CHECK(s.label() == Label::b_prime);
  CHECK(s.seed() == 7u);
  CHECK(s.negated()[0] == -1);
}

TEST_CASE("canonical angles") {
  CHECK(canonical_angle(0.0) == 0.0);
  CHECK(canonical_angle(kTwoPi) == 0.0);
  CHECK(canonical_angle(-kTwoPi) == 0.0);
  CHECK(canonical_angle(deg(-45)) == doctest::Approx(deg(315)).epsilon(1e-15));
  CHECK(canonical_angle(deg(725)) == doctest::Approx(deg(5)).epsilon(1e-12));
  CHECK_FALSE(same_angle(deg(359.9), 0.0));
  CHECK(same_angle(kTwoPi - 1e-12, 0.0));
  CHECK_THROWS_AS(canonical_angle(NAN), InvalidArgument);
}

TEST_CASE("labels") {
  for (auto l : {Label::a, Label::a_prime, Label::b, Label::b_prime}) {
    CHECK(parse_label(to_string(l)) == l);
    CHECK(parse_label(file_stem(l)) == l);
  }
  CHECK_THROWS_AS(parse_label("c"), InvalidArgument);
}

TEST_CASE("correlation examples") {
  const auto x = stream({1, -1, 1});
  CHECK(correlation(x, x).value == 1.0);
  CHECK(correlation(x, x.negated()).value == -1.0);

  const auto c = correlation(stream({1, 1, -1}), stream({1, -1, -1}));
  CHECK(c.exact_numerator == 1);
  CHECK(c.count == 3);
  CHECK(c.value == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(correlation(stream({1, 1}), stream({1})), LengthMismatch);
}

TEST_CASE("correlation is symmetric, odd under negation and bounded") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    const auto x = stream(oracle::random_spins(rng, n));
    const auto y = stream(oracle::random_spins(rng, n), Label::b);
    const auto xy = correlation(x, y);
    CHECK(xy.exact_numerator == correlation(y, x).exact_numerator);
    CHECK(correlation(x.negated(), y).exact_numerator == -xy.exact_numerator);
    CHECK(std::llabs(xy.exact_numerator) <= xy.count);
    CHECK(xy.value == static_cast<double>(xy.exact_numerator) / static_cast<double>(xy.count));
  }
}

TEST_CASE("identity3 examples") {
  const auto v = check_identity3(stream({1, 1, -1}), stream({1, -1, -1}, Label::b),
                                 stream({1, 1, 1}, Label::b_prime));
  CHECK(v.lhs_numerator == 0);
  CHECK(v.rhs_numerator == 4);
  CHECK(v.scale == 3);
  CHECK(v.holds);
  CHECK(v.slack_numerator == 4);

  const auto same = stream({1, -1, -1, 1, 1});
  const auto w = check_identity3(same, same, same);
  CHECK(w.lhs_numerator == 0);
  CHECK(w.rhs_numerator == 0);
  CHECK(w.holds);
  CHECK(w.slack_numerator == 0);

  CHECK_THROWS_AS(check_identity3(stream({1}), stream({1, 1}), stream({1})), LengthMismatch);
}

TEST_CASE("identity4 examples") {
  const auto v = check_identity4(stream({1}), stream({1}, Label::a_prime), stream({1}, Label::b),
                                 stream({-1}, Label::b_prime));
  CHECK(v.lhs_numerator == 2);
  CHECK(v.rhs_numerator == 2);
  CHECK(v.holds);
  CHECK(v.slack_numerator == 0);

  const auto s = stream({1, -1, 1, 1});
  const auto sat = check_identity4(s, s, s, s);
  CHECK(sat.lhs_numerator == 8);
  CHECK(sat.rhs_numerator == 8);
  CHECK(sat.holds);
}

TEST_CASE("per-element factoring and the four-term lemma") {
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int bp : {1, -1}) {
        // a*b' - a*b == a*b*(b*b' - 1) on every element
        CHECK(a * bp - a * b == a * b * (b * bp - 1));
        CHECK(std::abs(a * b) * std::abs(1 - b * bp) == 1 - b * bp);
      }
  for (int b : {1, -1})
    for (int bp : {1, -1}) CHECK(std::abs(b + bp) + std::abs(b - bp) == 2);
}

TEST_CASE("identities hold on random streams") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 2000;
    const auto a = stream(oracle::random_spins(rng, n));
    const auto ap = stream(oracle::random_spins(rng, n), Label::a_prime);
    const auto b = stream(oracle::random_spins(rng, n), Label::b);
    const auto bp = stream(oracle::random_spins(rng, n), Label::b_prime);
    const auto v3 = check_identity3(a, b, bp);
    const auto v4 = check_identity4(a, ap, b, bp);
    REQUIRE(v3.holds);
    REQUIRE(v4.holds);
    CHECK(v3.slack_numerator == v3.rhs_numerator - v3.lhs_numerator);

    // The limit form on empirical correlations agrees with the exact verdict.
    const auto e3 = eval_inequality3(correlation(a, b).value, correlation(a, bp).value, correlation(b, bp).value);
    CHECK(e3.satisfied);
    CHECK(e3.slack == doctest::Approx(v3.slack()).epsilon(1e-12));
    const auto e4 = eval_inequality4(correlation(a, b).value, correlation(a, bp).value, correlation(ap, b).value,
                                     correlation(ap, bp).value);
    CHECK(e4.satisfied);
  }
}

TEST_CASE("eval_inequality3 examples") {
  auto perfect = eval_inequality3(-1, -1, 1);
  CHECK(perfect.lhs == 0.0);
  CHECK(perfect.rhs == 0.0);
  CHECK(perfect.satisfied);

  auto ncos = [](double x, double y) { return -std::cos(deg(x) - deg(y)); };
  auto bad = eval_inequality3(ncos(0, 135), ncos(0, 270), ncos(135, 270));
  CHECK(bad.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(bad.rhs == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK_FALSE(bad.satisfied);
  CHECK(bad.slack == doctest::Approx(1 - std::sqrt(2.0)).epsilon(1e-12));

  auto ok = eval_inequality3(ncos(0, 60), ncos(0, 120), ncos(60, 120));
  CHECK(ok.lhs == doctest::Approx(1.0));
  CHECK(ok.rhs == doctest::Approx(1.5));
  CHECK(ok.satisfied);

  CHECK_THROWS_AS(eval_inequality3(1.5, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(eval_inequality3(0, NAN, 0), InvalidArgument);
}

TEST_CASE("eval_inequality4 examples") {
  CHECK(eval_inequality4(0, 0, 0, 0).satisfied);
  CHECK(eval_inequality4(0, 0, 0, 0).lhs == 0.0);

  auto ncos = [](double x, double y) { return -std::cos(deg(x) - deg(y)); };
  auto chsh = eval_inequality4(ncos(0, 45), ncos(0, 315), ncos(90, 45), ncos(90, 315));
  CHECK(chsh.lhs == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(chsh.satisfied);

  auto four = eval_inequality4(1, 1, 1, -1);
  CHECK(four.lhs == 4.0);
  CHECK_FALSE(four.satisfied);

  CHECK(eval_inequality4(1, 1, 1, 1).slack == 0.0);
  CHECK_THROWS_AS(eval_inequality4(0, 0, 0, -1.0001), InvalidArgument);
}

TEST_CASE("aligned set invariants and roles") {
  const auto a = stream({1, -1}, Label::a);
  const auto b = stream({1, 1}, Label::b);
  const auto bp = stream({-1, 1}, Label::b_prime);
  const auto ap = stream({1, 1}, Label::a_prime);

  AlignedSet triple({a, b, bp}, Provenance::simulated_jointly);
  CHECK(triple.is_triple());
  auto roles = triple.triple_roles();
  CHECK(roles.shared->label() == Label::a);
  CHECK(roles.partner->label() == Label::b);
  CHECK(roles.partner_prime->label() == Label::b_prime);

  AlignedSet mirror({b, a, ap}, Provenance::matched_from_runs);
  roles = mirror.triple_roles();
  CHECK(roles.shared->label() == Label::b);
  CHECK(roles.partner->label() == Label::a);

  CHECK_THROWS_AS(AlignedSet({a, b}, Provenance::simulated_jointly), InvalidArgument);
  CHECK_THROWS_AS(AlignedSet({a, a, b}, Provenance::simulated_jointly), InvalidArgument);
  CHECK_THROWS_AS(AlignedSet({a, b, stream({1}, Label::b_prime)}, Provenance::simulated_jointly), LengthMismatch);
  CHECK_THROWS_AS(triple.stream(Label::a_prime), InvalidArgument);

  AlignedSet quad({a, ap, b, bp}, Provenance::simulated_jointly);
  CHECK(check_identity(quad).holds);
  CHECK(check_identity(triple).holds);
}
