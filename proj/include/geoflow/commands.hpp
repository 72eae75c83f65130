#pragma once

// Command implementations behind the `geoflow` executable.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/config.hpp"
#include "geoflow/diagnostics.hpp"
#include "geoflow/io.hpp"

namespace geoflow::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitConfig = 2,
    kExitBlowUp = 3,  ///< a run stopped with a blow-up status; still a successful measurement
    kExitVerifyFailed = 4,
};

struct FrameResult {
    Frame frame = Frame::eulerian;
    RunStatus status = RunStatus::completed;
    double stop_time = 0.0;
    std::vector<DiagRow> rows;
    std::filesystem::path csv_path;
    std::filesystem::path json_path;
};

struct SimulationResult {
    std::vector<FrameResult> frames;
    /// For frame = both: L2 gap between u_euler and v o phi^{-1} at the last common record.
    std::optional<double> frame_gap;
    double frame_gap_time = 0.0;

    bool any_blow_up() const;
};

/// Runs the configured frame(s) and writes `<label>_<frame>.csv` and
/// `<label>_<frame>_final.json` into the resolved output directory.
SimulationResult run_simulation(const RunConfig& cfg);

int simulate_command(const RunConfig& cfg, std::ostream& out);

/// Parses "s=1,1.5,2" (or "s=[1, 1.5, 2]"). Throws ConfigError on an empty
/// list or an unsupported parameter name.
std::vector<double> parse_param_list(const std::string& spec);

/// One bessel(s) run per value. Failing children are recorded in their row.
std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<double>& s_values, int jobs);
int sweep_command(const RunConfig& base, const std::vector<double>& s_values, int jobs, std::ostream& out);

struct VerifyOptions {
    /// Test hook: swaps a builtin symbol for a corrupted table.
    bool corrupt_symbol = false;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<PropertyResult> run_verification(const VerifyOptions& options);
int verify_command(const VerifyOptions& options, std::ostream& out);

int info_command(std::ostream& out);

/// Entry point used by main(); parses argv with CLI11.
int run(int argc, char** argv);

}  // namespace geoflow::cli
