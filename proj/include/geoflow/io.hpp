#pragma once

// Persistence of trajectories: diagnostics CSV, final-state JSON and the
// sweep summary table. Numbers are written with 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/diagnostics.hpp"

namespace geoflow {

/// Fixed column order of the diagnostics CSV.
inline constexpr const char* kDiagnosticsHeader =
    "t,energy_A,h_q_norm,min_ux,min_phix,m_l2,dq_from_start,apriori_residual,chain_rule_residual";

/// "%.17g", or an empty string for missing (NaN) values.
std::string format_cell(double value);

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagRow>& rows);
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagRow>& rows);
/// Empty cells read back as kMissing. Throws Error on a malformed file.
std::vector<DiagRow> read_diagnostics_csv(const std::filesystem::path& path);
std::vector<DiagRow> read_diagnostics_csv(std::istream& in);

struct FinalState {
    std::string label;
    std::string frame;
    std::string symbol;
    int n = 0;
    RunStatus status = RunStatus::completed;
    double t = 0.0;
    std::vector<double> u;                        ///< Eulerian velocity samples
    std::optional<std::vector<double>> displacement;  ///< phi - id (Lagrangian runs)
    std::optional<std::vector<double>> v;             ///< Lagrangian velocity (Lagrangian runs)
};

void write_final_state_json(const std::filesystem::path& path, const FinalState& state);
FinalState read_final_state_json(const std::filesystem::path& path);

struct SweepRow {
    double s = 0.0;
    std::string status;  ///< a RunStatus string, or "error"
    std::optional<double> stop_time;  ///< present when the run stopped early
    double max_abs_min_ux = 0.0;
    double energy_drift = 0.0;
    std::string error;
};

inline constexpr const char* kSweepHeader = "s,status,stop_time,max_abs_min_ux,energy_drift,error";

void write_sweep_summary(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace geoflow
