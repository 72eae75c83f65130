#pragma once

// Eulerian-frame integration of u_t = -A^{-1}[u (Au)_x + 2 (Au) u_x] and of
// its momentum form m_t = -m_x u - 2 m u_x, m = Au.

#include <vector>

#include "geoflow/diagnostics.hpp"
#include "geoflow/solver_config.hpp"
#include "geoflow/spectral.hpp"

namespace geoflow {

struct EulerState {
    double t = 0.0;
    PeriodicField u;
};

struct MomentumState {
    double t = 0.0;
    PeriodicField m;
};

/// Zeroes all modes with |n| > floor(n/3) and the Nyquist mode.
PeriodicField dealias(const PeriodicField& w);

/// -A^{-1} dealias(u D(Au) + 2 (Au) Du).
PeriodicField euler_rhs(const PeriodicField& u, const SymbolSpec& a);

/// -dealias(Dm u + 2 m Du).
PeriodicField ep_rhs(const PeriodicField& m, const PeriodicField& u);

/// One classical RK4 step. Throws NumericalOverflow on non-finite output.
EulerState rk4_step(const EulerState& state, double dt, const SymbolSpec& a);
/// RK4 step of the momentum equation with u = A^{-1} m at every stage.
MomentumState ep_rk4_step(const MomentumState& state, double dt, const SymbolSpec& a);

struct EulerTrajectory {
    std::vector<EulerState> states;  ///< recorded states, parallel to rows
    std::vector<DiagRow> rows;
    RunStatus status = RunStatus::completed;
    double stop_time = 0.0;  ///< time of the last state (t_end when completed)
};

/// Integrates from u0 until t_end or a stop rule fires. Records every
/// record_every steps and always records the initial and final states.
/// Configuration errors throw; blow-up and overflow are reported in status.
EulerTrajectory integrate_euler(const PeriodicField& u0, const SolverConfig& cfg);

struct MomentumTrajectory {
    std::vector<MomentumState> states;
    RunStatus status = RunStatus::completed;
};

/// Integrates the momentum form from m0 = A u0 with the same recording cadence.
MomentumTrajectory integrate_momentum(const PeriodicField& m0, const SolverConfig& cfg);

/// Eulerian diagnostics of one state (Lagrangian columns left missing).
DiagRow eulerian_row(double t, const PeriodicField& u, const SymbolSpec& a, double q_work);

/// Throws ConfigError unless u has no content above the dealias band
/// (and zero mean for mean_zero_only symbols).
void check_initial_velocity(const PeriodicField& u0, const SymbolSpec& a);

/// Fills apriori_residual on each row from its successor.
void fill_apriori_residuals(std::vector<DiagRow>& rows);

}  // namespace geoflow
