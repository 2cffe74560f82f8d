#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// INI-style sections of key = value pairs. '#' and ';' start comments.
struct IniFile {
  // section -> ordered key/value list (order preserved for round trips)
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections;

  bool has_section(const std::string& s) const;
  const std::vector<std::pair<std::string, std::string>>* section(const std::string& s) const;
  std::optional<std::string> get(const std::string& sec, const std::string& key) const;

  static IniFile parse(const std::string& text);
  std::string serialize() const;
};

enum class SweepVariable { kGap, kTemperature, kZ, kFillingFactor, kDissipationScale };

struct SweepSpec {
  SweepVariable variable = SweepVariable::kGap;
  double min = 0.0, max = 0.0;
  int points = 1;
  bool log_spacing = true;
};

struct RunConfig {
  Scenario scenario;
  std::optional<SweepSpec> sweep;
  std::string output_path;
  double omega_scale = 0.0; // 0 = frequencies given in rad/s
  // raw key/value view, kept for round-trip serialization and validation
  IniFile raw;
};

struct Diagnostic {
  enum class Severity { kError, kWarning } severity;
  std::string message;
};

// Parse and build a full run configuration. Throws ConfigError on anything
// that prevents constructing a scenario.
RunConfig parse_run_config(const std::string& text);

// Diagnostics only: unknown keys, unit violations, regime warnings.
std::vector<Diagnostic> validate_config(const std::string& text);

// Serialize a RunConfig back to config text (used by dump-preset; re-running
// the dump reproduces identical results).
std::string serialize_run_config(const RunConfig& cfg);

} // namespace casimir
