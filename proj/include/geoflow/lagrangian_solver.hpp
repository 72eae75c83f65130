#pragma once

// Geodesic flow in Lagrangian variables: phi_t = v, v_t = S_phi(v), with
// S_phi = R_phi o S o R_{phi^{-1}} and S(u) = A^{-1}{[A,u]u_x - 2(Au)u_x}.

#include <vector>

#include "geoflow/diagnostics.hpp"
#include "geoflow/diffeo.hpp"
#include "geoflow/euler_solver.hpp"
#include "geoflow/solver_config.hpp"

namespace geoflow {

struct LagrangianState {
    double t = 0.0;
    DiffeoMap phi;
    PeriodicField v;
};

/// A^{-1} dealias(A(u u_x) - u A(u_x) - 2 (Au) u_x).
PeriodicField s_operator(const PeriodicField& u, const SymbolSpec& a);

/// (R_phi o S o R_{phi^{-1}})(v) = S(v o phi^{-1}) o phi.
PeriodicField spray(const DiffeoMap& phi, const PeriodicField& v, const SymbolSpec& a);

/// Eulerian velocity u = v o phi^{-1} of a Lagrangian snapshot.
PeriodicField eulerian_velocity(const LagrangianState& state);

struct LagrangianTrajectory {
    std::vector<LagrangianState> states;  ///< recorded states, parallel to rows
    std::vector<DiagRow> rows;
    RunStatus status = RunStatus::completed;
    double stop_time = 0.0;
};

/// RK4 on the coupled (phi, v) system. Stop rules: min u_x, H^q norm of u,
/// and min phi_x against cfg.stop.jacobian_floor. A stage that leaves the
/// diffeomorphism group also ends the run with stopped:jacobian_floor.
LagrangianTrajectory integrate_geodesic(const DiffeoMap& phi0, const PeriodicField& v0,
                                        const SolverConfig& cfg);

struct FlowReconstruction {
    std::vector<DiffeoMap> maps;  ///< phi at each input time, phi(0) = id
    RunStatus status = RunStatus::completed;
};

/// Integrates phi_t = u(t) o phi by RK4 with step equal to the sample spacing;
/// u at half steps comes from 4-point Lagrange interpolation in time.
/// Requires uniformly spaced states. Truncates with stopped:jacobian_floor
/// when phi stops being a diffeomorphism.
FlowReconstruction flow_from_velocity(const std::vector<EulerState>& u_traj);

/// Exponent used for dq_from_start: max(q_work, 2) so that d_q is defined.
double distance_exponent(const SolverConfig& cfg);

}  // namespace geoflow
