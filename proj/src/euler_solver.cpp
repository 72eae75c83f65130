#include "geoflow/euler_solver.hpp"

#include <cmath>

#include "quadratic_ops.hpp"

namespace geoflow {

// ---------------------------------------------------------------- SolverConfig

long SolverConfig::step_count() const { return std::lround(t_end / dt); }

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver.dt must be a positive number");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("solver.t_end must be >= 0");
    const double steps = t_end / dt;
    if (std::abs(steps - std::round(steps)) > 1e-6 * std::max(1.0, steps)) {
        throw ConfigError("solver.t_end must be an integer multiple of solver.dt");
    }
    if (record_every < 1) throw ConfigError("solver.record_every must be a positive integer");
    if (!(stop.min_slope_floor < 0.0)) throw ConfigError("stop.min_slope_floor must be negative");
    if (!(stop.norm_ceiling > 0.0)) throw ConfigError("stop.norm_ceiling must be positive");
    if (!(stop.jacobian_floor > 0.0 && stop.jacobian_floor < 1.0)) {
        throw ConfigError("stop.jacobian_floor must lie in (0, 1)");
    }
    if (q_work && !(*q_work >= 0.0)) throw ConfigError("solver.q_work must be >= 0");
    if (!symbol.is_symmetric()) {
        throw ConfigError("symbol " + symbol.name() + " is not symmetric and cannot be an inertia operator");
    }
}

// ---------------------------------------------------------------- operators

PeriodicField dealias(const PeriodicField& w) {
    const detail::QuadraticOps ops(SymbolSpec::identity(), w.grid(), DealiasRule::two_thirds);
    Spectrum c = analyze(w);
    ops.dealias_in_place(c);
    return synthesize(c);
}

PeriodicField euler_rhs(const PeriodicField& u, const SymbolSpec& a) {
    return detail::QuadraticOps(a, u.grid(), DealiasRule::two_thirds).euler_rhs(u);
}

PeriodicField ep_rhs(const PeriodicField& m, const PeriodicField& u) {
    require_same_grid(m.grid(), u.grid());
    return detail::QuadraticOps(SymbolSpec::identity(), u.grid(), DealiasRule::two_thirds).ep_rhs(m, u);
}

namespace {

/// Classical RK4 for y' = f(y) on fields.
template <class Rhs>
PeriodicField rk4_advance(const PeriodicField& y, double dt, Rhs&& f) {
    const PeriodicField k1 = f(y);
    const PeriodicField k2 = f(y + (0.5 * dt) * k1);
    const PeriodicField k3 = f(y + (0.5 * dt) * k2);
    const PeriodicField k4 = f(y + dt * k3);
    PeriodicField out = y;
    out += (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    return out;
}

EulerState rk4_step(const EulerState& s, double dt, const detail::QuadraticOps& ops) {
    return {s.t + dt, rk4_advance(s.u, dt, [&](const PeriodicField& u) { return ops.euler_rhs(u); })};
}

MomentumState ep_rk4_step(const MomentumState& s, double dt, const detail::QuadraticOps& ops) {
    auto f = [&](const PeriodicField& m) { return ops.ep_rhs(m, ops.velocity(m)); };
    return {s.t + dt, rk4_advance(s.m, dt, f)};
}

DiagRow eulerian_row(double t, const PeriodicField& u, const detail::QuadraticOps& ops, double q_work) {
    DiagRow row;
    row.t = t;
    row.energy_A = energy_norm(u, ops.inertia().symbol());
    row.h_q_norm = sobolev_norm(u, q_work);
    row.min_ux = min_slope(u);
    row.m_l2 = sobolev_norm(ops.momentum(u), 0.0);
    return row;
}

}  // namespace

EulerState rk4_step(const EulerState& state, double dt, const SymbolSpec& a) {
    if (!(dt > 0.0)) throw Error("rk4_step requires dt > 0");
    return rk4_step(state, dt, detail::QuadraticOps(a, state.u.grid(), DealiasRule::two_thirds));
}

MomentumState ep_rk4_step(const MomentumState& state, double dt, const SymbolSpec& a) {
    if (!(dt > 0.0)) throw Error("ep_rk4_step requires dt > 0");
    return ep_rk4_step(state, dt, detail::QuadraticOps(a, state.m.grid(), DealiasRule::two_thirds));
}

DiagRow eulerian_row(double t, const PeriodicField& u, const SymbolSpec& a, double q_work) {
    return eulerian_row(t, u, detail::QuadraticOps(a, u.grid(), DealiasRule::two_thirds), q_work);
}

void check_initial_velocity(const PeriodicField& u0, const SymbolSpec& a) {
    const Spectrum c = analyze(u0);
    const Grid& g = u0.grid();
    const double norm = sobolev_norm(c, 0.0);
    double outside = std::abs(c[-g.size() / 2]);
    for (int k = g.dealias_cutoff() + 1; k <= g.max_resolved_mode(); ++k) {
        outside = std::max({outside, std::abs(c[k]), std::abs(c[-k])});
    }
    if (outside > 1e-12 * std::max(norm, 1e-300)) {
        throw ConfigError("initial velocity has modes beyond the dealias band n/3 = " +
                          std::to_string(g.dealias_cutoff()));
    }
    if (a.invertible_on() == Invertibility::mean_zero_only && std::abs(c[0]) > 1e-12 * norm) {
        throw ConfigError("zero mode not invertible: symbol " + a.name() + " needs a mean-zero initial velocity");
    }
}

void fill_apriori_residuals(std::vector<DiagRow>& rows) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        rows[i].apriori_residual = apriori_residual(rows[i], rows[i + 1]);
    }
    if (!rows.empty()) rows.back().apriori_residual = kMissing;
}

EulerTrajectory integrate_euler(const PeriodicField& u0, const SolverConfig& cfg) {
    cfg.validate();
    check_initial_velocity(u0, cfg.symbol);
    const detail::QuadraticOps ops(cfg.symbol, u0.grid(), cfg.dealias);
    const double q_work = cfg.working_q();
    const long steps = cfg.step_count();

    EulerTrajectory traj;
    EulerState state{0.0, u0};
    auto record = [&](const EulerState& s) {
        traj.rows.push_back(eulerian_row(s.t, s.u, ops, q_work));
        traj.states.push_back(s);
    };
    record(state);

    for (long step = 1; step <= steps; ++step) {
        try {
            state = rk4_step(state, cfg.dt, ops);
            state.t = static_cast<double>(step) * cfg.dt;
        } catch (const NumericalOverflow&) {
            traj.status = RunStatus::stopped_overflow;
            if (traj.states.back().t != state.t) record(state);
            break;
        }
        const double slope = min_slope(state.u);
        if (slope < cfg.stop.min_slope_floor) {
            traj.status = RunStatus::stopped_min_slope;
        } else if (sobolev_norm(state.u, q_work) > cfg.stop.norm_ceiling) {
            traj.status = RunStatus::stopped_norm_ceiling;
        }
        if (traj.status != RunStatus::completed || step % cfg.record_every == 0 || step == steps) {
            record(state);
        }
        if (traj.status != RunStatus::completed) break;
    }
    traj.stop_time = traj.states.back().t;
    fill_apriori_residuals(traj.rows);
    return traj;
}

MomentumTrajectory integrate_momentum(const PeriodicField& m0, const SolverConfig& cfg) {
    cfg.validate();
    const detail::QuadraticOps ops(cfg.symbol, m0.grid(), cfg.dealias);
    const long steps = cfg.step_count();
    MomentumTrajectory traj;
    MomentumState state{0.0, m0};
    traj.states.push_back(state);
    for (long step = 1; step <= steps; ++step) {
        try {
            state = ep_rk4_step(state, cfg.dt, ops);
            state.t = static_cast<double>(step) * cfg.dt;
        } catch (const NumericalOverflow&) {
            traj.status = RunStatus::stopped_overflow;
            break;
        }
        if (step % cfg.record_every == 0 || step == steps) traj.states.push_back(state);
    }
    return traj;
}

}  // namespace geoflow
