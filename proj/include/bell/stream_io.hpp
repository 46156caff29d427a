#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "bell/singlet.hpp"
#include "bell/streams.hpp"

namespace bell {

/// Text stream format:
///
///     # label=a
///     # angle_rad=<decimal>
///     # seed=<u64 decimal>        (omitted when the stream has no seed)
///     +1
///     -1
///     ...
///
/// label and angle_rad are required. Blank lines are ignored.
void write_stream(std::ostream& out, const SpinStream& stream);
SpinStream read_stream(std::istream& in);

void write_stream_file(const std::filesystem::path& path, const SpinStream& stream);
SpinStream read_stream_file(const std::filesystem::path& path);

/// "<file_stem(label)>.txt"
std::string stream_file_name(Label label);

/// A run directory holds both stream files and run.json with the config.
void write_run_dir(const std::filesystem::path& dir, const PairRun& run);
PairRun read_run_dir(const std::filesystem::path& dir);

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

}  // namespace bell
