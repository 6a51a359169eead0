#pragma once

// Run configuration: strict JSON schema, bundled presets and the mapping
// from command-line overrides.

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otto/atlas.hpp"

namespace otto {

/// Schema or value violation; `path` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Mode { cycle, sweep, landmarks, validate };
enum class Format { csv, json };

std::string_view to_string(Mode m);
std::string_view to_string(Format f);

struct GridSpec {
  double tau_min = 1e-3;
  double tau_max = 1.2;
  int tau_count = 200;
  Spacing spacing = Spacing::log;
};

struct RunConfig {
  Mode mode = Mode::cycle;
  /// Base parameters; tau_cycle is the cycle-mode period.
  CycleParams params;
  /// Explicit sweep grid; when empty the grid spec is used.
  std::vector<double> taus;
  GridSpec grid;
  std::vector<double> landmarks{0.5, 1.0, 1.5};
  unsigned threads = 0;
  /// Empty means standard output.
  std::string out;
  Format format = Format::csv;
  int samples_per_segment = 200;
  int verbosity = 0;
  /// Debug only: inverts the equilibrium energy in the validation harness.
  bool flip_eeq_sign = false;
  /// Non-fatal physics remarks collected while parsing.
  std::vector<std::string> warnings;

  std::vector<double> sweep_grid() const;
  SweepSpec sweep_spec() const;
  SolveOptions solve_options() const;
};

/// Named parameter sets. Throws ConfigError for an unknown name.
CycleParams preset(std::string_view name);
std::vector<std::string> preset_names();

/// Overrides collected from the command line; unset fields leave the file
/// or preset value alone.
struct FlagOverrides {
  std::optional<std::string> preset;
  std::optional<std::string> config_path;
  std::optional<std::string> mode;
  std::optional<double> tau;
  std::optional<double> tau_min;
  std::optional<double> tau_max;
  std::optional<int> tau_count;
  std::optional<std::string> tau_spacing;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<int> samples_per_segment;
  bool validate = false;
  bool flip_eeq_sign = false;
};

/// Applies a JSON document on top of `base`. Unknown keys and wrong types
/// raise ConfigError with the field path.
RunConfig apply_json(const nlohmann::json& doc, RunConfig base);

/// Full pipeline: preset (flag, then file, then paper-family), file,
/// flags, then validation. Throws ConfigError on schema or invariant
/// violations; reading failures are ConfigError with path "config".
RunConfig parse_config(const FlagOverrides& flags);

/// Checks every invariant and records physics warnings.
void finalize(RunConfig& config);

}  // namespace otto
