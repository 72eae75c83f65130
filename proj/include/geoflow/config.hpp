#pragma once

// Run configuration files: a small TOML-like format with [section] headers,
// `key = value` lines and dotted keys (`grid.n = 256` is the same as `n = 256`
// under [grid]). Values are numbers, quoted strings, or bracketed lists.
// The accepted keys are documented in docs/config.md.

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "geoflow/solver_config.hpp"

namespace geoflow {

enum class Frame { eulerian, lagrangian, both };

struct InitialMode {
    int mode = 0;
    double cos_amplitude = 0.0;
    double sin_amplitude = 0.0;
    friend bool operator==(const InitialMode&, const InitialMode&) = default;
};

struct RunConfig {
    int n = 256;
    SolverConfig solver;
    Frame frame = Frame::eulerian;
    std::vector<InitialMode> initial;
    std::string output_dir = "out";
    std::string label = "run";

    /// u0(x) = sum of a cos(n x) + b sin(n x) over the initial modes.
    PeriodicField initial_velocity() const;
    /// Output directory with the GEOFLOW_OUTPUT_ROOT override applied.
    std::filesystem::path resolved_output_dir() const;
    /// The full configuration, defaults included, in the file format.
    std::string echo() const;
    /// Throws ConfigError naming the field and the violated constraint.
    void validate() const;
};

/// Environment variable that, when set, is prepended to output.dir.
inline constexpr const char* kOutputRootEnv = "GEOFLOW_OUTPUT_ROOT";

std::string_view to_string(Frame frame);

/// A parsed configuration value.
struct ConfigValue {
    std::variant<double, std::string, std::vector<ConfigValue>> data;
};

/// Flat "section.key" -> value map of a configuration text.
std::map<std::string, ConfigValue> parse_config_entries(const std::string& text);

RunConfig parse_config_text(const std::string& text);
/// Reads and validates a configuration file. Missing file or invalid
/// content throws ConfigError.
RunConfig parse_config(const std::filesystem::path& path);

/// Builds a symbol from its name and parameters as used in config files.
SymbolSpec make_symbol(const std::string& kind, double parameter);

}  // namespace geoflow
