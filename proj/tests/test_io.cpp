#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "bell/errors.hpp"
#include "bell/json.hpp"
#include "bell/stream_io.hpp"
#include "oracles.hpp"

using namespace bell;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("bell_io_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SpinStream parse(const std::string& text) {
  std::istringstream in(text);
  return read_stream(in);
}

}  // namespace

TEST_CASE("stream text round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double angle = std::uniform_real_distribution<double>(0, 6.28)(rng);
    std::optional<std::uint64_t> seed;
    if (trial % 2) seed = rng();
    const SpinStream s(oracle::random_spins(rng, 1 + rng() % 1000), angle, Label::b_prime, seed);
    std::ostringstream out;
    write_stream(out, s);
    const auto back = parse(out.str());
    CHECK(back == s);
  }
}

TEST_CASE("stream format") {
  const SpinStream s({1, -1}, 0.5, Label::a_prime, 42u);
  std::ostringstream out;
  write_stream(out, s);
  CHECK(out.str() == "# label=a'\n# angle_rad=0.5\n# seed=42\n+1\n-1\n");
  CHECK(stream_file_name(Label::a_prime) == "a_prime.txt");

  const auto tolerant = parse("# label=b\n# a free comment\n# angle_rad=1\n\n+1\n  -1 \n\n");
  CHECK(tolerant.size() == 2);
  CHECK_FALSE(tolerant.seed().has_value());
}

TEST_CASE("parse errors name the line") {
  try {
    parse("# label=a\n# angle_rad=0\n+1\n0\n-1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("# angle_rad=0\n+1\n"), ParseError);
  CHECK_THROWS_AS(parse("# label=a\n+1\n"), ParseError);
  CHECK_THROWS_AS(parse("# label=a\n# angle_rad=0\n"), ParseError);
  CHECK_THROWS_AS(parse("# label=q\n# angle_rad=0\n+1\n"), ParseError);
  CHECK_THROWS_AS(parse("# label=a\n# angle_rad=zero\n+1\n"), ParseError);
  CHECK_THROWS_AS(parse("# label=a\n# angle_rad=0\n+1\n# seed=3\n"), ParseError);
  CHECK_THROWS_AS(parse("# label=a\n# angle_rad=0\n1\n"), ParseError);

  const auto dir = scratch("lines");
  std::ofstream(dir / "bad.txt") << "# label=a\n# angle_rad=0\n+1\n+1\n+2\n";
  try {
    read_stream_file(dir / "bad.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    const std::string what = e.what();
    CHECK(what.find("bad.txt") != std::string::npos);
    CHECK(what.find("(line 5)") == what.rfind("(line"));
  }
  CHECK_THROWS_AS(read_stream_file(dir / "missing.txt"), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("run directory round trip") {
  SourceConfig c;
  c.n_pairs = 500;
  c.theta_left = 0.25;
  c.theta_right = 2.5;
  c.seed = 0xabcdef0123456789ull;
  c.right_label = Label::b_prime;
  const auto run = sample_run(c);
  const auto dir = scratch("run");
  write_run_dir(dir, run);
  CHECK(fs::exists(dir / "a.txt"));
  CHECK(fs::exists(dir / "b_prime.txt"));
  const auto back = read_run_dir(dir);
  CHECK(back.left == run.left);
  CHECK(back.right == run.right);
  CHECK(back.config.seed == c.seed);
  CHECK(back.config.right_label == Label::b_prime);
  CHECK(back.config.theta_right == run.config.theta_right);
  fs::remove_all(dir);
}

TEST_CASE("json reports carry exact numerators") {
  const SpinStream a({1, 1, -1}, 0, Label::a), b({1, -1, -1}, 0, Label::b), bp({1, 1, 1}, 0, Label::b_prime);
  nlohmann::json j = correlation(a, b);
  CHECK(j["exact_numerator"] == 1);
  CHECK(j["count"] == 3);
  nlohmann::json v = check_identity3(a, b, bp);
  CHECK(v["lhs_numerator"] == 0);
  CHECK(v["rhs_numerator"] == 4);
  CHECK(v["holds"] == true);

  const auto report = aligned_set_report(AlignedSet({a, b, bp}, Provenance::simulated_jointly));
  CHECK(report.contains("correlations"));
  CHECK(report.contains("identity3"));

  nlohmann::json f = feasible(CorrelationPoint::exact(PointKind::triple, {1, 1, 1}));
  CHECK(f["feasible"] == true);
  CHECK(f["exact_witness"][0] == "1/2");

  SourceConfig c;
  c.n_pairs = 7;
  c.seed = 0xffffffffffffffffull;
  c.left_label = Label::a_prime;
  nlohmann::json cj = c;
  const auto back = cj.get<SourceConfig>();
  CHECK(back.seed == c.seed);
  CHECK(back.left_label == Label::a_prime);
  CHECK(back.n_pairs == 7);
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::uniform_real_distribution<double>(-10, 10)(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
}
