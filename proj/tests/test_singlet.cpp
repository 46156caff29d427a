#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bell/errors.hpp"
#include "bell/singlet.hpp"
#include "oracles.hpp"

using namespace bell;
using oracle::deg;

namespace {

SourceConfig config(std::uint64_t n, double left_deg, double right_deg, std::uint64_t seed) {
  SourceConfig c;
  c.n_pairs = n;
  c.theta_left = deg(left_deg);
  c.theta_right = deg(right_deg);
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("joint probability examples") {
  CHECK(std::abs(joint_probability(0.3, 0.3, 1, 1)) < 1e-15);
  for (int l : {1, -1})
    for (int r : {1, -1}) CHECK(joint_probability(0, deg(90), l, r) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(joint_probability(0, deg(60), 1, 1) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(joint_probability(0, deg(60), -1, -1) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(joint_probability(0, 0, 0, 1), InvalidArgument);
}

TEST_CASE("joint law sums to one and matches the oracle on a grid") {
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) {
        const double tl = deg(36.0 * i + 3.7 * k);
        const double tr = deg(36.0 * j - 1.3 * k);
        double sum = 0.0;
        for (int l : {1, -1})
          for (int r : {1, -1}) {
            const double p = joint_probability(tl, tr, l, r);
            CHECK(p >= 0.0);
            CHECK(p == doctest::Approx(oracle::singlet_joint(tl, tr, l, r)).epsilon(1e-14));
            sum += p;
          }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validated(config(0, 0, 0, 1)), InvalidArgument);
  auto photon = config(10, 0, 0, 1);
  photon.photon_polarization = true;
  CHECK_THROWS_AS(validated(photon), Unsupported);
  CHECK_THROWS_AS(sample_run(photon), Unsupported);

  auto swapped = config(10, 0, 0, 1);
  swapped.left_label = Label::b;
  CHECK_THROWS_AS(validated(swapped), InvalidArgument);
  auto bad_right = config(10, 0, 0, 1);
  bad_right.right_label = Label::a_prime;
  CHECK_THROWS_AS(validated(bad_right), InvalidArgument);

  CHECK(validated(config(1, -90, 450, 0)).theta_left == doctest::Approx(deg(270)).epsilon(1e-15));
}

TEST_CASE("equal angles give exact anti-correlation") {
  for (std::uint64_t seed : {0ull, 1ull, 0xfeedfacecafebeefull}) {
    const auto run = sample_run(config(50000, 17, 17, seed));
    for (std::size_t i = 0; i < run.size(); ++i) REQUIRE(run.left[i] == -run.right[i]);
  }
}

TEST_CASE("sampled correlation follows -cos") {
  const std::size_t n = 1'000'000;
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  for (double d : {30.0, 60.0, 90.0, 135.0}) {
    const auto run = sample_run(config(n, 10, 10 + d, 42));
    CHECK(std::abs(correlation(run.left, run.right).value + std::cos(deg(d))) <= tol);
  }
}

TEST_CASE("runs are deterministic and labelled") {
  auto c = config(1000, 0, 60, 9);
  c.right_label = Label::b_prime;
  const auto one = sample_run(c);
  const auto two = sample_run(c);
  CHECK(one.left == two.left);
  CHECK(one.right == two.right);
  CHECK(one.left.seed() == 9u);
  CHECK(one.right.label() == Label::b_prime);
  CHECK(one.right.angle() == doctest::Approx(deg(60)));
  c.seed = 10;
  CHECK_FALSE(sample_run(c).left == one.left);
}

TEST_CASE("marginals are fair") {
  const std::size_t n = 1'000'000;
  const auto m = marginal_check(sample_run(config(n, 0, 75, 3)));
  const double tol = 4.0 * 0.5 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(m.left_plus_fraction - 0.5) <= tol);
  CHECK(std::abs(m.right_plus_fraction - 0.5) <= tol);

  PairRun plus{SpinStream({1, 1, 1}, 0, Label::a), SpinStream({-1, 1, -1}, 0, Label::b), config(3, 0, 0, 0)};
  CHECK(marginal_check(plus).left_plus_fraction == 1.0);
  CHECK(marginal_check(plus).right_plus_fraction == doctest::Approx(1.0 / 3.0));

  const auto single = marginal_check(sample_run(config(1, 0, 0, 5)));
  CHECK((single.left_plus_fraction == 0.0 || single.left_plus_fraction == 1.0));
}
