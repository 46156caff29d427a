#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell/cascade.hpp"
#include "bell/feasibility.hpp"
#include "bell/matching.hpp"
#include "bell/singlet.hpp"

namespace bellsim {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kIdentityFailed = 1, kUsage = 2, kDataError = 3 };

/// Bad flags or flag combinations. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulateOptions {
  bell::SourceConfig config;
  fs::path out;
};

struct MatchOptions {
  std::vector<fs::path> runs;
  bell::MatchOrder order = bell::MatchOrder::a_then_b;
  fs::path out;
};

struct CascadeOptions {
  bell::CascadeConfig config;
  fs::path out;
};

struct VerifyOptions {
  std::vector<fs::path> files;
  std::optional<fs::path> out;
};

struct ScanOptions {
  std::size_t points_per_axis = 72;
  bell::ScanMode mode = bell::ScanMode::triple;
  bool only_violations = false;
  fs::path out;
};

struct FeasibleOptions {
  std::vector<std::string> values;  ///< exact decimal or p/q strings
  bool bounds = false;
  std::optional<fs::path> out;
};

/// Each command writes its files plus manifest.json into its output directory
/// and returns an exit code. Library errors propagate to run_guarded.
int cmd_simulate(const SimulateOptions& opt, std::ostream& log);
int cmd_match(const MatchOptions& opt, std::ostream& log);
int cmd_cascade(const CascadeOptions& opt, std::ostream& log);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& log);
int cmd_scan(const ScanOptions& opt, std::ostream& log);
int cmd_feasible(const FeasibleOptions& opt, std::ostream& out, std::ostream& log);

/// Re-executes the command recorded in a manifest. `out` overrides the
/// recorded output directory.
int cmd_replay(const fs::path& manifest, const std::optional<fs::path>& out, std::ostream& stdout_stream,
               std::ostream& log);

/// Runs `body`, mapping exceptions to exit codes and printing them to `log`.
template <class F>
int run_guarded(F&& body, std::ostream& log);

bell::MatchOrder parse_order(const std::string& s);
bell::ScanMode parse_mode(const std::string& s);

/// "42" or "0x2a".
std::uint64_t parse_seed(const std::string& text);

/// Points per axis from a --resolution value: a step in degrees with --deg,
/// otherwise the point count itself.
std::size_t points_from_resolution(double resolution, bool degrees);

}  // namespace bellsim

#include "commands_inl.hpp"
