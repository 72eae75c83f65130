#pragma once

// Monitored scalars along a trajectory and the property probes built on them.

#include <limits>
#include <string>
#include <string_view>

#include "geoflow/diffeo.hpp"
#include "geoflow/spectral.hpp"

namespace geoflow {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// One record of a trajectory. Lagrangian-only columns (min_phix,
/// dq_from_start, chain_rule_residual) hold kMissing on Eulerian runs.
/// apriori_residual belongs to the pair (this row, next row) and is
/// kMissing on the last row.
struct DiagRow {
    double t = 0.0;
    double energy_A = 0.0;
    double h_q_norm = 0.0;
    double min_ux = 0.0;
    double min_phix = kMissing;
    double m_l2 = 0.0;
    double dq_from_start = kMissing;
    double apriori_residual = kMissing;
    double chain_rule_residual = kMissing;
};

enum class RunStatus { completed, stopped_min_slope, stopped_jacobian_floor, stopped_norm_ceiling, stopped_overflow };

/// "completed", "stopped:min_slope", ...
std::string_view to_string(RunStatus status);
RunStatus parse_status(std::string_view text);
inline bool is_blow_up(RunStatus s) { return s != RunStatus::completed; }

/// Grid minimum of the spectral derivative u_x.
double min_slope(const PeriodicField& u);

/// Grid minimum of phi_x = 1 + f_x.
double min_jacobian(const DiffeoMap& phi);

/// d(||m||^2)/dt + 3 min(u_x) ||m||^2 from two adjacent records, with a
/// forward difference in t and min_ux, m_l2 taken at the left record.
/// Non-positive in the continuum limit.
double apriori_residual(const DiagRow& left, const DiagRow& right);

/// ||L^s(uv) - u L^s v||_L2 / (||u_x||_inf ||L^{s-1} v||_L2 + ||L^s u||_L2 ||v||_inf),
/// L^s the multiplier (1+k^2)^{s/2}. Returns 0 when both sides vanish.
double kato_ponce_ratio(const PeriodicField& u, const PeriodicField& v, double s);

/// max_x |u_x o phi - v_x / phi_x|.
double chain_rule_residual(const PeriodicField& u, const PeriodicField& v, const DiffeoMap& phi);

/// The multiplier (1+k^2)^{sigma/2}.
PeriodicField bessel_potential(const PeriodicField& u, double sigma);

}  // namespace geoflow
