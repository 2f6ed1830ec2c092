#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmtherm/model.hpp"
#include "dmtherm/sweep.hpp"

namespace dmtherm::cli {

// Bad flags, unreadable or malformed config files. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Text, Csv, Json };

std::optional<OutputFormat> parse_format(std::string_view s);

struct RunConfig {
  Couplings couplings;
  double temperature = 1.0;
  std::optional<OutputFormat> format;  // unset: per-command default
  std::string out;                     // empty: stdout
  std::uint64_t seed = 1729;
  bool verbose = false;

  // sweep only
  std::optional<Axis> axis1;
  std::optional<Axis> axis2;
  std::optional<Quantity> quantity;
  std::string quantity_label;
  double t_floor = 1e-3;
  unsigned threads = 0;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// `key = value` per line, `#` starts a comment, blank lines ignored.
// Duplicate or unknown keys are errors.
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source = "<config>");

void apply(RunConfig& cfg, const std::vector<ConfigEntry>& entries, std::string_view source = "<config>");

RunConfig load_config_file(const std::filesystem::path& path);

// Finite double, whole string consumed.
double parse_real(std::string_view s, std::string_view what);

// "<param> <start> <stop> <count>", e.g. "dz -3 3 201".
Axis parse_axis(std::string_view s, std::string_view what);

// Directory holding the figure presets: $DMTHERM_PRESET_DIR if set, else the
// source tree location baked in at build time.
std::filesystem::path preset_dir();
std::filesystem::path preset_path(std::string_view name);

// Sweep spec from a config; throws ConfigError when axis1 or quantity is missing.
SweepSpec make_sweep_spec(const RunConfig& cfg);

}  // namespace dmtherm::cli
