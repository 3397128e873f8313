#pragma once

// Command-line front end: argument parsing, the verification suites and
// report output.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage or I/O error.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmverify/quadrature.hpp"
#include "cmverify/report.hpp"

namespace cmverify::cli {

enum class Command {
  density,
  verify_representation,
  verify_identities,
  verify_contour,
  check_cm,
  check_bernstein,
  refute_stieltjes,
  report_all,
};

enum class Format { csv, json };

std::string to_string(Command c);

struct SRange {
  double lo = 0.0;
  double hi = 50.0;
  std::size_t count = 501;
  bool log = false;
};

struct RunConfig {
  Command command = Command::report_all;
  /// Empty means the suite's own grid.
  std::vector<double> x_grid;
  SRange s_range;
  /// Pass tolerance for the route comparisons (relative); unset means the suite default.
  std::optional<double> tol;
  quadrature::Tolerance quad = arctan_cm::kInnerTolerance;
  /// Empty means standard output.
  std::string output_path;
  /// Unset means csv for density and json otherwise.
  std::optional<Format> format;
  /// Adds wall-clock seconds to JSON output (which then differs run to run).
  bool timing = false;
  std::size_t threads = 1;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// CM_VERIFY_THREADS when set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Inclusive linear (or logarithmic) spacing of the range.
std::vector<double> sample_range(const SRange& r);

/// "lo:hi:count".
SRange parse_range(const std::string& text);
/// Comma-separated positive numbers.
std::vector<double> parse_list(const std::string& text);

struct ParseOutcome {
  std::optional<RunConfig> config;
  /// Meaningful when config is empty: 0 after --help, 2 on a usage error.
  int exit_code = 0;
};

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::vector<arctan_cm::DensityPoint> density_points(const RunConfig& cfg);

report::SuiteReport suite_density(const RunConfig& cfg);
report::SuiteReport suite_representation(const RunConfig& cfg);
report::SuiteReport suite_identities(const RunConfig& cfg);
report::SuiteReport suite_contour(const RunConfig& cfg);
report::SuiteReport suite_cm(const RunConfig& cfg);
report::SuiteReport suite_bernstein(const RunConfig& cfg);
report::SuiteReport suite_stieltjes(const RunConfig& cfg);

/// Runs the configured command and writes its output. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmverify::cli
