#pragma once

// Check results and their serialisation. Numbers are written with 17
// significant digits and keys in a fixed order, so equal inputs give
// byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "cmverify/arctan_cm.hpp"

namespace cmverify::report {

using Json = nlohmann::ordered_json;

struct CheckEntry {
  std::string name;
  /// NaN when the check has no numeric target (written as null).
  double target = 0.0;
  double computed = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// Set when the computation failed; written only when non-empty.
  std::string reason;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckEntry> entries;
  /// Suite-specific extras (witnesses, verdicts); written only when not null.
  Json details;
  double seconds = 0.0;

  bool pass() const;
};

/// {suite, entries: [{name, target, computed, tol, pass[, reason]}], [details,] pass[, seconds]}
Json to_json(const SuiteReport& rep, bool timing);

/// {suites: [...], pass[, seconds]}
Json to_json(const std::vector<SuiteReport>& reps, bool timing);

/// Pretty-printed with two-space indent and "%.17g" numbers; non-finite
/// numbers become null.
std::string dump(const Json& doc);

std::string format_number(double v);

/// "s,w,err" header plus one row per point.
std::string density_csv(const std::vector<arctan_cm::DensityPoint>& pts);

/// "suite,name,target,computed,tol,pass" header plus one row per entry.
std::string entries_csv(const std::vector<SuiteReport>& reps);

}  // namespace cmverify::report
