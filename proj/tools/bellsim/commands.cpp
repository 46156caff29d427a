#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "bell/errors.hpp"
#include "bell/json.hpp"
#include "bell/kernels.hpp"
#include "bell/rational.hpp"
#include "bell/stream_io.hpp"

#ifndef BELL_VERSION
#define BELL_VERSION "unknown"
#endif

namespace bellsim {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string order_name(bell::MatchOrder o) { return o == bell::MatchOrder::a_then_b ? "a_then_b" : "b_then_a"; }

std::string mode_name(bell::ScanMode m) { return m == bell::ScanMode::triple ? "triple" : "quadruple"; }

std::vector<std::string> path_strings(const std::vector<fs::path>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(fs::absolute(p).lexically_normal().string());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw bell::InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void prepare_dir(const fs::path& dir) {
  if (dir.empty()) throw UsageError("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw bell::InvalidArgument("cannot create output directory " + dir.string());
}

struct Manifest {
  std::string command;
  json config;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Clock::time_point started = Clock::now();

  void write(const fs::path& dir) const {
    const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
    json j = {{"command", command},
              {"version", BELL_VERSION},
              {"config", config},
              {"seeds", seeds},
              {"inputs", inputs},
              {"outputs", outputs},
              {"threads", bell::max_threads()},
              {"duration_seconds", seconds}};
    write_json(dir / "manifest.json", j);
  }
};

std::string fmt(double v, const char* format = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

double to_degrees(double rad) {
  const double d = rad * 180.0 / kPi;
  return std::round(d * 1e9) / 1e9;
}

// -- config echo ---------------------------------------------------------------

json echo(const SimulateOptions& o) { return {{"source", o.config}, {"out", fs::absolute(o.out).string()}}; }
json echo(const MatchOptions& o) {
  return {{"runs", path_strings(o.runs)}, {"order", order_name(o.order)}, {"out", fs::absolute(o.out).string()}};
}
json echo(const CascadeOptions& o) { return {{"cascade", o.config}, {"out", fs::absolute(o.out).string()}}; }
json echo(const VerifyOptions& o) {
  json j = {{"files", path_strings(o.files)}};
  if (o.out) j["out"] = fs::absolute(*o.out).string();
  return j;
}
json echo(const ScanOptions& o) {
  return {{"points_per_axis", o.points_per_axis},
          {"mode", mode_name(o.mode)},
          {"only_violations", o.only_violations},
          {"out", fs::absolute(o.out).string()}};
}
json echo(const FeasibleOptions& o) {
  json j = {{"values", o.values}, {"bounds", o.bounds}};
  if (o.out) j["out"] = fs::absolute(*o.out).string();
  return j;
}

}  // namespace

bell::MatchOrder parse_order(const std::string& s) {
  if (s == "a_then_b") return bell::MatchOrder::a_then_b;
  if (s == "b_then_a") return bell::MatchOrder::b_then_a;
  throw UsageError("order must be a_then_b or b_then_a");
}

bell::ScanMode parse_mode(const std::string& s) {
  if (s == "triple") return bell::ScanMode::triple;
  if (s == "quadruple") return bell::ScanMode::quadruple;
  throw UsageError("mode must be triple or quadruple");
}

std::uint64_t parse_seed(const std::string& text) {
  std::string_view s = text;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("seed must be a decimal or 0x-prefixed hex u64: " + text);
  }
  return v;
}

std::size_t points_from_resolution(double resolution, bool degrees) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) throw UsageError("resolution must be positive");
  double points = degrees ? 360.0 / resolution : resolution;
  const double rounded = std::round(points);
  if (std::abs(points - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw UsageError(degrees ? "360 must be a whole multiple of the resolution step"
                             : "resolution must be a whole number of points per axis");
  }
  if (rounded < 2) throw UsageError("resolution yields fewer than 2 grid points per axis");
  return static_cast<std::size_t>(rounded);
}

// -- simulate ------------------------------------------------------------------

int cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
  Manifest manifest{"simulate", echo(opt), {opt.config.seed}, {}, {}};
  if (opt.config.n_pairs < 1) throw UsageError("--n must be >= 1");
  bell::SourceConfig config;
  try {
    config = bell::validated(opt.config);
  } catch (const bell::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  prepare_dir(opt.out);
  const auto run = bell::sample_run(config);
  bell::write_run_dir(opt.out, run);
  manifest.outputs = {bell::stream_file_name(run.left.label()), bell::stream_file_name(run.right.label()),
                      "run.json"};
  manifest.write(opt.out);
  log << "simulated " << run.size() << " pairs into " << opt.out.string() << '\n';
  return kOk;
}

// -- match ---------------------------------------------------------------------

int cmd_match(const MatchOptions& opt, std::ostream& log) {
  if (opt.runs.size() < 2 || opt.runs.size() > 4) throw UsageError("match needs 2 to 4 run directories");
  Manifest manifest{"match", echo(opt), {}, path_strings(opt.runs), {}};

  std::vector<bell::PairRun> runs;
  for (const auto& dir : opt.runs) {
    runs.push_back(bell::read_run_dir(dir));
    manifest.seeds.push_back(runs.back().config.seed);
  }
  auto find = [&](bell::Label l, bell::Label r) -> const bell::PairRun* {
    for (const auto& run : runs) {
      if (run.left.label() == l && run.right.label() == r) return &run;
    }
    return nullptr;
  };

  prepare_dir(opt.out);
  bell::MatchResult result;
  std::vector<std::string> source_columns;
  std::optional<bell::OverdeterminationReport> over;

  if (runs.size() == 2) {
    std::vector<bell::Label> shared;
    for (auto l : {runs[0].left.label(), runs[0].right.label()}) {
      if (l == runs[1].left.label() || l == runs[1].right.label()) shared.push_back(l);
    }
    if (shared.size() != 1) throw bell::InvalidArgument("the two runs must share exactly one label");
    result = bell::match_on_label(runs[0], runs[1], shared.front());
    for (const auto& run : runs) {
      source_columns.push_back("src_" + std::string(bell::file_stem(run.left.label())) + "_" +
                               std::string(bell::file_stem(run.right.label())));
    }
  } else {
    using bell::Label;
    const auto* ab = find(Label::a, Label::b);
    const auto* abp = find(Label::a, Label::b_prime);
    const auto* apb = find(Label::a_prime, Label::b);
    if (ab == nullptr || abp == nullptr || apb == nullptr) {
      throw bell::InvalidArgument("quadruple matching needs runs labelled (a,b), (a,b') and (a',b)");
    }
    const auto* apbp = find(Label::a_prime, Label::b_prime);
    if (runs.size() == 4 && apbp == nullptr) throw bell::InvalidArgument("fourth run must be labelled (a',b')");
    result = bell::build_quadruple(*ab, *abp, *apb, opt.order);
    source_columns = {"src_a_b", "src_a_b_prime", "src_a_prime_b"};
    if (apbp != nullptr && !result.degenerate()) over = bell::overdetermination_report(result, *apbp);
  }

  json match = bell::match_result_json(result, false);
  match["order"] = order_name(opt.order);
  match["row_sources_file"] = "row_sources.csv";
  write_json(opt.out / "match.json", match);
  manifest.outputs.push_back("match.json");

  if (result.degenerate()) {
    manifest.write(opt.out);
    log << "error: no rows could be matched\n";
    return kDataError;
  }

  {
    std::ofstream csv(opt.out / "row_sources.csv", std::ios::binary | std::ios::trunc);
    csv << "row";
    for (const auto& c : source_columns) csv << ',' << c;
    csv << '\n';
    std::string line;
    for (std::size_t r = 0; r < result.retained; ++r) {
      line = std::to_string(r);
      for (const auto& col : result.row_sources) line += ',' + std::to_string(col[r]);
      line += '\n';
      csv << line;
    }
    if (!csv) throw bell::InvalidArgument("cannot write row_sources.csv");
    manifest.outputs.push_back("row_sources.csv");
  }
  for (const auto& s : result.aligned->streams()) {
    bell::write_stream_file(opt.out / bell::stream_file_name(s.label()), s);
    manifest.outputs.push_back(bell::stream_file_name(s.label()));
  }
  write_json(opt.out / "identity.json", bell::aligned_set_report(*result.aligned));
  manifest.outputs.push_back("identity.json");
  if (over) {
    write_json(opt.out / "overdetermination.json", *over);
    manifest.outputs.push_back("overdetermination.json");
  }
  manifest.write(opt.out);

  log << "matched " << result.retained << " rows (retention " << fmt(result.retention_fraction, "%.6f") << ")\n";
  if (over) log << over->note << '\n';
  return bell::check_identity(*result.aligned).holds ? kOk : kIdentityFailed;
}

// -- cascade -------------------------------------------------------------------

int cmd_cascade(const CascadeOptions& opt, std::ostream& log) {
  Manifest manifest{"cascade", echo(opt), {opt.config.seed}, {}, {}};
  if (opt.config.n_pairs < 1) throw UsageError("--n must be >= 1");
  prepare_dir(opt.out);
  const auto run = bell::sample_cascade(opt.config);
  for (const auto& s : run.aligned.streams()) {
    bell::write_stream_file(opt.out / bell::stream_file_name(s.label()), s);
    manifest.outputs.push_back(bell::stream_file_name(s.label()));
  }
  {
    std::ofstream csv(opt.out / "spots.csv", std::ios::binary | std::ios::trunc);
    csv << "pair_index,left_spot,right_spot\n";
    std::string line;
    for (std::size_t i = 0; i < run.left_spots.size(); ++i) {
      line = std::to_string(i);
      line += ',';
      line += static_cast<char>('0' + run.left_spots[i]);
      line += ',';
      line += static_cast<char>('0' + run.right_spots[i]);
      line += '\n';
      csv << line;
    }
    if (!csv) throw bell::InvalidArgument("cannot write spots.csv");
    manifest.outputs.push_back("spots.csv");
  }
  const auto report = bell::cascade_correlations(run);
  write_json(opt.out / "correlations.json", report);
  manifest.outputs.push_back("correlations.json");
  manifest.write(opt.out);
  log << "cascade: CHSH lhs " << fmt(report.chsh_empirical.lhs, "%.6f") << " from " << run.aligned.size()
      << " pairs\n";
  return report.identity.holds ? kOk : kIdentityFailed;
}

// -- verify --------------------------------------------------------------------

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& log) {
  if (opt.files.size() != 3 && opt.files.size() != 4) throw UsageError("verify needs 3 or 4 stream files");
  Manifest manifest{"verify", echo(opt), {}, path_strings(opt.files), {}};
  std::vector<bell::SpinStream> streams;
  for (const auto& f : opt.files) {
    streams.push_back(bell::read_stream_file(f));
    if (streams.back().seed()) manifest.seeds.push_back(*streams.back().seed());
  }
  const bell::AlignedSet set(std::move(streams), bell::Provenance::supplied);
  const auto report = bell::aligned_set_report(set);
  out << report.dump(2) << '\n';
  if (opt.out) {
    prepare_dir(*opt.out);
    write_json(*opt.out / "report.json", report);
    manifest.outputs.push_back("report.json");
    manifest.write(*opt.out);
  }
  if (!bell::check_identity(set).holds) {
    log << "identity violated: the input cannot be well-formed +-1 data\n";
    return kIdentityFailed;
  }
  return kOk;
}

// -- scan ----------------------------------------------------------------------

int cmd_scan(const ScanOptions& opt, std::ostream& log) {
  if (opt.points_per_axis < 2) throw UsageError("scan needs at least 2 grid points per axis");
  Manifest manifest{"scan", echo(opt), {}, {}, {}};
  prepare_dir(opt.out);
  const auto result = bell::angle_violation_scan(opt.points_per_axis, opt.mode);
  const bool quad = opt.mode == bell::ScanMode::quadruple;

  {
    std::ofstream csv(opt.out / "violations.csv", std::ios::binary | std::ios::trunc);
    csv << "theta_a_deg,theta_a_prime_deg,theta_b_deg,theta_b_prime_deg,"
        << (quad ? "c_ab,c_ab_prime,c_a_prime_b,c_a_prime_b_prime" : "c_ab,c_ab_prime,c_b_b_prime")
        << ",lhs,rhs,slack,satisfied,feasible\n";
    std::string line;
    for (const auto& row : result.rows) {
      if (opt.only_violations && row.inequality.satisfied) continue;
      line.clear();
      for (double t : {row.theta_a, row.theta_a_prime, row.theta_b, row.theta_b_prime}) {
        line += fmt(to_degrees(t));
        line += ',';
      }
      for (std::size_t k = 0; k < (quad ? 4u : 3u); ++k) {
        line += fmt(row.correlations[k], "%.12g");
        line += ',';
      }
      line += fmt(row.inequality.lhs, "%.12g") + ',' + fmt(row.inequality.rhs, "%.12g") + ',' +
              fmt(row.inequality.slack, "%.12g") + ',' + (row.inequality.satisfied ? "true" : "false") + ',' +
              (row.feasible ? "true" : "false") + '\n';
      csv << line;
    }
    if (!csv) throw bell::InvalidArgument("cannot write violations.csv");
    manifest.outputs.push_back("violations.csv");
  }

  auto angles = [&](std::size_t r) {
    const auto& row = result.rows[r];
    json j = {{"theta_a_deg", to_degrees(row.theta_a)}, {"theta_b_deg", to_degrees(row.theta_b)},
              {"theta_b_prime_deg", to_degrees(row.theta_b_prime)}};
    if (quad) j["theta_a_prime_deg"] = to_degrees(row.theta_a_prime);
    return j;
  };
  json summary = result.summary;
  summary["mode"] = mode_name(opt.mode);
  summary["points_per_axis"] = opt.points_per_axis;
  summary["step_deg"] = 360.0 / static_cast<double>(opt.points_per_axis);
  summary["argmax_lhs_angles"] = angles(result.summary.argmax_lhs);
  summary["argmin_slack_angles"] = angles(result.summary.argmin_slack);
  summary["max_violation"] = std::max(0.0, -result.summary.min_slack);
  write_json(opt.out / "summary.json", summary);
  manifest.outputs.push_back("summary.json");
  manifest.write(opt.out);

  log << "scan: " << result.summary.points << " points, " << result.summary.violations << " violations, max lhs "
      << fmt(result.summary.max_lhs, "%.6f") << '\n';
  if (result.summary.contradictions != 0) {
    log << "error: violated points reported feasible\n";
    return kIdentityFailed;
  }
  return kOk;
}

// -- feasible ------------------------------------------------------------------

int cmd_feasible(const FeasibleOptions& opt, std::ostream& out, std::ostream& /*log*/) {
  std::vector<bell::Rational> values;
  for (const auto& s : opt.values) {
    try {
      values.push_back(bell::parse_rational(s));
    } catch (const bell::InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  Manifest manifest{"feasible", echo(opt), {}, {}, {}};
  json report;
  if (opt.bounds) {
    if (values.size() == 2) {
      report = bell::third_correlation_bounds(values[0], values[1]);
      report["query"] = "bb' given ab, ab'";
    } else if (values.size() == 3) {
      report = bell::induced_fourth_report(values[0], values[1], values[2]);
      report["query"] = "a'b' given ab, ab', a'b";
    } else {
      throw UsageError("--bounds takes 2 or 3 values");
    }
  } else {
    if (values.size() != 3 && values.size() != 4) throw UsageError("a point has 3 or 4 correlations");
    const auto kind = values.size() == 3 ? bell::PointKind::triple : bell::PointKind::quadruple;
    report = bell::feasible(bell::CorrelationPoint::exact(kind, values));
  }
  out << report.dump(2) << '\n';
  if (opt.out) {
    prepare_dir(*opt.out);
    write_json(*opt.out / "feasibility.json", report);
    manifest.outputs.push_back("feasibility.json");
    manifest.write(*opt.out);
  }
  return kOk;
}

// -- replay --------------------------------------------------------------------

int cmd_replay(const fs::path& manifest_path, const std::optional<fs::path>& out, std::ostream& stdout_stream,
               std::ostream& log) {
  std::ifstream in(manifest_path);
  if (!in) throw bell::InvalidArgument("cannot open " + manifest_path.string());
  json manifest;
  in >> manifest;
  const auto command = manifest.at("command").get<std::string>();
  const auto& config = manifest.at("config");
  auto out_dir = [&]() -> fs::path { return out ? *out : fs::path(config.at("out").get<std::string>()); };
  auto paths = [](const json& list) {
    std::vector<fs::path> p;
    for (const auto& s : list) p.emplace_back(s.get<std::string>());
    return p;
  };
  auto optional_out = [&]() -> std::optional<fs::path> {
    if (out) return out;
    if (config.contains("out")) return fs::path(config.at("out").get<std::string>());
    return std::nullopt;
  };

  if (command == "simulate") return cmd_simulate({config.at("source").get<bell::SourceConfig>(), out_dir()}, log);
  if (command == "cascade") return cmd_cascade({config.at("cascade").get<bell::CascadeConfig>(), out_dir()}, log);
  if (command == "match") {
    return cmd_match({paths(config.at("runs")), parse_order(config.at("order").get<std::string>()), out_dir()}, log);
  }
  if (command == "scan") {
    return cmd_scan({config.at("points_per_axis").get<std::size_t>(),
                     parse_mode(config.at("mode").get<std::string>()), config.at("only_violations").get<bool>(),
                     out_dir()},
                    log);
  }
  if (command == "verify") return cmd_verify({paths(config.at("files")), optional_out()}, stdout_stream, log);
  if (command == "feasible") {
    return cmd_feasible({config.at("values").get<std::vector<std::string>>(), config.at("bounds").get<bool>(),
                         optional_out()},
                        stdout_stream, log);
  }
  throw bell::InvalidArgument("unknown command in manifest: " + command);
}

}  // namespace bellsim
