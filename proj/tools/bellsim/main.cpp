#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "bell/kernels.hpp"
#include "bell/streams.hpp"
#include "commands.hpp"

using namespace bellsim;

namespace {

double angle(double value, bool degrees) { return degrees ? value * std::numbers::pi / 180.0 : value; }

bell::Label label(const std::string& s) {
  try {
    return bell::parse_label(s);
  } catch (const bell::InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-correlation stream simulator and auditor"};
  app.require_subcommand(1);

  // simulate
  std::uint64_t n = 0;
  double theta_left = 0, theta_right = 0;
  bool deg = false;
  std::string seed = "0", left_label = "a", right_label = "b";
  std::string out;
  auto* sim = app.add_subcommand("simulate", "sample one singlet run at fixed settings");
  sim->add_option("--n", n, "number of pairs")->required();
  sim->add_option("--theta-left", theta_left, "left analyser angle")->required();
  sim->add_option("--theta-right", theta_right, "right analyser angle")->required();
  sim->add_flag("--deg", deg, "angles are in degrees");
  sim->add_option("--seed", seed, "u64 seed, decimal or 0x hex");
  sim->add_option("--left-label", left_label, "a or a'");
  sim->add_option("--right-label", right_label, "b or b'");
  sim->add_option("--out", out, "output directory")->required();

  // match
  std::vector<std::string> runs;
  std::string order = "a_then_b";
  auto* match = app.add_subcommand("match", "align 2-4 runs on their shared settings");
  match->add_option("runs", runs, "run directories")->required()->expected(2, 4);
  match->add_option("--order", order, "a_then_b or b_then_a");
  match->add_option("--out", out, "output directory")->required();

  // cascade
  double ta = 0, tap = 0, tb = 0, tbp = 0;
  auto* cas = app.add_subcommand("cascade", "two sequential analysers per arm");
  cas->add_option("--n", n, "number of pairs")->required();
  cas->add_option("--theta-a", ta)->required();
  cas->add_option("--theta-a-prime", tap)->required();
  cas->add_option("--theta-b", tb)->required();
  cas->add_option("--theta-b-prime", tbp)->required();
  cas->add_flag("--deg", deg, "angles are in degrees");
  cas->add_option("--seed", seed, "u64 seed, decimal or 0x hex");
  cas->add_option("--out", out, "output directory")->required();

  // verify
  std::vector<std::string> files;
  auto* ver = app.add_subcommand("verify", "audit 3 or 4 stream files");
  ver->add_option("files", files, "stream files")->required()->expected(3, 4);
  ver->add_option("--out", out, "also write report.json and a manifest here");

  // scan
  double resolution = 0;
  std::string mode = "triple";
  bool only_violations = false;
  auto* scan = app.add_subcommand("scan", "grid scan of the -cos law over analyser angles");
  scan->add_option("--mode", mode, "triple or quadruple");
  scan->add_option("--resolution", resolution, "step in degrees with --deg, else points per axis")->required();
  scan->add_flag("--deg", deg, "resolution is a step in degrees");
  scan->add_flag("--only-violations", only_violations, "write violated rows only");
  scan->add_option("--out", out, "output directory")->required();

  // feasible
  std::vector<std::string> values;
  bool bounds = false;
  auto* fea = app.add_subcommand("feasible", "can any +-1 streams carry these correlations?");
  fea->add_option("values", values, "ab ab' bb' | ab ab' a'b a'b' (decimal or p/q)")->required()->expected(2, 4);
  fea->add_flag("--bounds", bounds, "range of the next correlation given 2 or 3 values");
  fea->add_option("--out", out, "also write feasibility.json and a manifest here");

  // replay
  std::string manifest;
  auto* rep = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  rep->add_option("manifest", manifest, "manifest.json")->required();
  rep->add_option("--out", out, "output directory (default: the recorded one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto optional_out = [&]() -> std::optional<fs::path> {
    if (out.empty()) return std::nullopt;
    return fs::path(out);
  };

  return run_guarded(
      [&]() -> int {
        try {
          bell::apply_thread_limit_from_env();
        } catch (const bell::InvalidArgument& e) {
          throw UsageError(e.what());
        }
        if (*sim) {
          bell::SourceConfig c;
          c.n_pairs = n;
          c.theta_left = angle(theta_left, deg);
          c.theta_right = angle(theta_right, deg);
          c.seed = parse_seed(seed);
          c.left_label = label(left_label);
          c.right_label = label(right_label);
          return cmd_simulate({c, out}, std::cerr);
        }
        if (*match) {
          std::vector<fs::path> dirs(runs.begin(), runs.end());
          return cmd_match({dirs, parse_order(order), out}, std::cerr);
        }
        if (*cas) {
          bell::CascadeConfig c{n, angle(ta, deg), angle(tap, deg), angle(tb, deg), angle(tbp, deg), parse_seed(seed)};
          return cmd_cascade({c, out}, std::cerr);
        }
        if (*ver) {
          std::vector<fs::path> paths(files.begin(), files.end());
          return cmd_verify({paths, optional_out()}, std::cout, std::cerr);
        }
        if (*scan) {
          return cmd_scan({points_from_resolution(resolution, deg), parse_mode(mode), only_violations, out},
                          std::cerr);
        }
        if (*fea) return cmd_feasible({values, bounds, optional_out()}, std::cout, std::cerr);
        return cmd_replay(manifest, optional_out(), std::cout, std::cerr);
      },
      std::cerr);
}
