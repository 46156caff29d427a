#include "bell/stream_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <system_error>

#include <json.hpp>

#include "bell/errors.hpp"
#include "bell/json.hpp"

namespace bell {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw InvalidArgument("cannot format number");
  return std::string(buffer, end);
}

std::string stream_file_name(Label label) { return std::string(file_stem(label)) + ".txt"; }

void write_stream(std::ostream& out, const SpinStream& stream) {
  out << "# label=" << to_string(stream.label()) << '\n';
  out << "# angle_rad=" << format_double(stream.angle()) << '\n';
  if (stream.seed()) out << "# seed=" << *stream.seed() << '\n';
  std::string body;
  body.reserve(stream.size() * 3);
  for (auto v : stream.outcomes()) body += v > 0 ? "+1\n" : "-1\n";
  out << body;
}

SpinStream read_stream(std::istream& in) {
  std::optional<Label> label;
  std::optional<double> angle;
  std::optional<std::uint64_t> seed;
  std::vector<std::int8_t> outcomes;

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (!outcomes.empty()) throw ParseError("header line after data", number);
      const auto body = trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;  // free-form comment
      const auto key = trim(body.substr(0, eq));
      const auto value = trim(body.substr(eq + 1));
      try {
        if (key == "label") {
          label = parse_label(value);
        } else if (key == "angle_rad") {
          double v = 0.0;
          const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
          if (ec != std::errc{} || ptr != value.data() + value.size()) throw InvalidArgument("bad angle");
          angle = v;
        } else if (key == "seed") {
          std::uint64_t v = 0;
          const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
          if (ec != std::errc{} || ptr != value.data() + value.size()) throw InvalidArgument("bad seed");
          seed = v;
        }
      } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid header: ") + e.what(), number);
      }
      continue;
    }
    if (text == "+1") {
      outcomes.push_back(1);
    } else if (text == "-1") {
      outcomes.push_back(-1);
    } else {
      throw ParseError("invalid outcome token '" + std::string(text) + "', expected +1 or -1", number);
    }
  }
  if (!label) throw ParseError("missing header: label", 0);
  if (!angle) throw ParseError("missing header: angle_rad", 0);
  if (outcomes.empty()) throw ParseError("stream has no outcomes", 0);
  try {
    return SpinStream(std::move(outcomes), *angle, *label, seed);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
}

void write_stream_file(const std::filesystem::path& path, const SpinStream& stream) {
  auto out = open_output(path);
  write_stream(out, stream);
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

SpinStream read_stream_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_stream(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

void write_run_dir(const std::filesystem::path& dir, const PairRun& run) {
  std::filesystem::create_directories(dir);
  write_stream_file(dir / stream_file_name(run.left.label()), run.left);
  write_stream_file(dir / stream_file_name(run.right.label()), run.right);
  nlohmann::json sidecar = run.config;
  sidecar["left_file"] = stream_file_name(run.left.label());
  sidecar["right_file"] = stream_file_name(run.right.label());
  auto out = open_output(dir / "run.json");
  out << sidecar.dump(2) << '\n';
}

PairRun read_run_dir(const std::filesystem::path& dir) {
  auto in = open_input(dir / "run.json");
  nlohmann::json sidecar;
  try {
    in >> sidecar;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "run.json").string() + ": " + e.what(), 0);
  }
  SourceConfig config;
  std::string left_file, right_file;
  try {
    config = sidecar.get<SourceConfig>();
    left_file = sidecar.at("left_file").get<std::string>();
    right_file = sidecar.at("right_file").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "run.json").string() + ": " + e.what(), 0);
  } catch (const InvalidArgument& e) {
    throw ParseError((dir / "run.json").string() + ": " + e.what(), 0);
  }
  auto left = read_stream_file(dir / left_file);
  auto right = read_stream_file(dir / right_file);
  if (left.size() != right.size()) throw LengthMismatch("run streams in " + dir.string() + " differ in length");
  if (left.label() != config.left_label || right.label() != config.right_label) {
    throw ParseError("stream labels disagree with run.json in " + dir.string(), 0);
  }
  config.n_pairs = left.size();
  config.theta_left = left.angle();
  config.theta_right = right.angle();
  return PairRun{std::move(left), std::move(right), config};
}

}  // namespace bell
