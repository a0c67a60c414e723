#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace fringelab::cli {

enum class Command { Fringes, WeakValues, Envelope, Semiclassical, ClassicalMc, ReproducePaper };
enum class OutputFormat { Csv, Json };

const char* command_name(Command command);

inline constexpr std::size_t kMinTraceSamples = 16;
inline constexpr std::size_t kDefaultTraceSamples = 4096;
inline constexpr std::uint64_t kDefaultMcSamples = 1000000;

struct RunSpec {
  Command command = Command::Fringes;
  int photons = 8;
  int input_diff = 0;   // 2 m_psi
  int output_diff = 0;  // 2 m
  double phi_min = -std::numbers::pi;
  double phi_max = std::numbers::pi;
  std::optional<std::uint64_t> samples;  // per-command default when unset
  double phi = std::numbers::pi / 2.0;   // classical-mc only
  std::uint64_t seed = 42;
  std::string output_path;  // empty: stdout (a directory for reproduce-paper)
  OutputFormat format = OutputFormat::Csv;

  std::uint64_t sample_count() const;
  /// Throws InvalidArgument naming the violated invariant.
  void validate() const;
};

/// Parses argv into a RunSpec. Returns nullopt and sets `exit_code` when
/// parsing ends early (help, usage errors).
std::optional<RunSpec> parse_arguments(int argc, const char* const* argv, std::ostream& out,
                                       std::ostream& err, int& exit_code);

/// Executes a validated spec. Text outputs go to `out` unless output_path is
/// set.
void run(const RunSpec& spec, std::ostream& out);

/// Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 numerical
/// failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Formatting shared by the writers.

/// 12 significant digits ("%.12g"), "nan" and "inf"/"-inf" spelled out.
std::string format_number(double value);

/// Column-major table written as CSV (header row, LF endings) or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // one vector per column
  void add_column(std::string name, std::vector<double> values);
  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

void write_csv(std::ostream& os, const Table& table);

/// Writes `contents` to `path` in binary mode; throws std::runtime_error on
/// failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Figure files plus summary.json under `directory`. Returns the all-pass flag
/// of the reference checks.
bool reproduce_paper(const std::filesystem::path& directory, std::ostream& log);

}  // namespace fringelab::cli
