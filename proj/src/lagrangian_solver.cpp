#include "geoflow/lagrangian_solver.hpp"

#include <cmath>

#include "quadratic_ops.hpp"

namespace geoflow {

namespace {

/// A stage of the integrator left the diffeomorphism group.
struct LeftGroup {};

PeriodicField spray(const DiffeoMap& phi, const PeriodicField& v, const detail::QuadraticOps& ops) {
    const PeriodicField u = compose(v, invert_diffeo(phi));
    return compose(ops.s_operator(u), phi);
}

DiffeoMap to_diffeo(const PeriodicField& f) {
    auto phi = DiffeoMap::try_make(f);
    if (!phi) throw LeftGroup{};
    return std::move(*phi);
}

struct Derivative {
    PeriodicField df;
    PeriodicField dv;
};

Derivative geodesic_rhs(const PeriodicField& f, const PeriodicField& v, const detail::QuadraticOps& ops) {
    try {
        return {v, spray(to_diffeo(f), v, ops)};
    } catch (const NumericalOverflow&) {
        throw;
    } catch (const Error&) {
        // inversion failure: the stage map is numerically degenerate
        throw LeftGroup{};
    }
}

LagrangianState geodesic_step(const LagrangianState& s, double dt, const detail::QuadraticOps& ops) {
    const PeriodicField& f = s.phi.displacement();
    const PeriodicField& v = s.v;
    const Derivative k1 = geodesic_rhs(f, v, ops);
    const Derivative k2 = geodesic_rhs(f + (0.5 * dt) * k1.df, v + (0.5 * dt) * k1.dv, ops);
    const Derivative k3 = geodesic_rhs(f + (0.5 * dt) * k2.df, v + (0.5 * dt) * k2.dv, ops);
    const Derivative k4 = geodesic_rhs(f + dt * k3.df, v + dt * k3.dv, ops);
    PeriodicField f_next = f + (dt / 6.0) * (k1.df + 2.0 * (k2.df + k3.df) + k4.df);
    PeriodicField v_next = v + (dt / 6.0) * (k1.dv + 2.0 * (k2.dv + k3.dv) + k4.dv);
    return {s.t + dt, to_diffeo(f_next), std::move(v_next)};
}

/// Lagrange weights at t for nodes t_0..t_{m-1}.
std::vector<double> lagrange_weights(const std::vector<double>& nodes, double t) {
    std::vector<double> w(nodes.size(), 1.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (i != j) w[i] *= (t - nodes[j]) / (nodes[i] - nodes[j]);
        }
    }
    return w;
}

/// u(t) from the uniformly spaced samples, using the 4 samples nearest to the
/// interval [k, k+1] containing t.
PeriodicField interpolate_in_time(const std::vector<EulerState>& traj, std::size_t k, double t) {
    const std::size_t count = traj.size();
    const std::size_t width = std::min<std::size_t>(4, count);
    std::size_t first = k > 0 ? k - 1 : 0;
    if (first + width > count) first = count - width;
    std::vector<double> nodes(width);
    for (std::size_t i = 0; i < width; ++i) nodes[i] = traj[first + i].t;
    const auto w = lagrange_weights(nodes, t);
    PeriodicField out = w[0] * traj[first].u;
    for (std::size_t i = 1; i < width; ++i) out += w[i] * traj[first + i].u;
    return out;
}

}  // namespace

PeriodicField s_operator(const PeriodicField& u, const SymbolSpec& a) {
    return detail::QuadraticOps(a, u.grid(), DealiasRule::two_thirds).s_operator(u);
}

PeriodicField spray(const DiffeoMap& phi, const PeriodicField& v, const SymbolSpec& a) {
    require_same_grid(phi.grid(), v.grid());
    return spray(phi, v, detail::QuadraticOps(a, v.grid(), DealiasRule::two_thirds));
}

PeriodicField eulerian_velocity(const LagrangianState& state) {
    return compose(state.v, invert_diffeo(state.phi));
}

double distance_exponent(const SolverConfig& cfg) { return std::max(cfg.working_q(), 2.0); }

LagrangianTrajectory integrate_geodesic(const DiffeoMap& phi0, const PeriodicField& v0,
                                        const SolverConfig& cfg) {
    cfg.validate();
    require_same_grid(phi0.grid(), v0.grid());
    const detail::QuadraticOps ops(cfg.symbol, v0.grid(), cfg.dealias);
    const double q_work = cfg.working_q();
    const double q_dist = distance_exponent(cfg);
    const long steps = cfg.step_count();

    LagrangianTrajectory traj;
    auto make_row = [&](const LagrangianState& s, const PeriodicField& u) {
        DiagRow row;
        row.t = s.t;
        row.energy_A = energy_norm(u, cfg.symbol);
        row.h_q_norm = sobolev_norm(u, q_work);
        row.min_ux = min_slope(u);
        row.m_l2 = sobolev_norm(ops.momentum(u), 0.0);
        row.min_phix = min_jacobian(s.phi);
        row.dq_from_start = dq_distance(phi0, s.phi, q_dist);
        row.chain_rule_residual = chain_rule_residual(u, s.v, s.phi);
        return row;
    };
    auto record = [&](const LagrangianState& s, const PeriodicField& u) {
        traj.rows.push_back(make_row(s, u));
        traj.states.push_back(s);
    };

    LagrangianState state{0.0, phi0, v0};
    record(state, eulerian_velocity(state));

    for (long step = 1; step <= steps; ++step) {
        std::optional<PeriodicField> u;
        try {
            LagrangianState next = geodesic_step(state, cfg.dt, ops);
            next.t = static_cast<double>(step) * cfg.dt;
            state = std::move(next);
            if (min_jacobian(state.phi) < cfg.stop.jacobian_floor) {
                traj.status = RunStatus::stopped_jacobian_floor;
            } else {
                u = eulerian_velocity(state);
                if (min_slope(*u) < cfg.stop.min_slope_floor) {
                    traj.status = RunStatus::stopped_min_slope;
                } else if (sobolev_norm(*u, q_work) > cfg.stop.norm_ceiling) {
                    traj.status = RunStatus::stopped_norm_ceiling;
                }
            }
        } catch (const NumericalOverflow&) {
            traj.status = RunStatus::stopped_overflow;
        } catch (const LeftGroup&) {
            traj.status = RunStatus::stopped_jacobian_floor;
        } catch (const Error&) {
            // reconstructing u failed: phi is numerically degenerate
            traj.status = RunStatus::stopped_jacobian_floor;
        }

        const bool stopped = traj.status != RunStatus::completed;
        if (!stopped && (step % cfg.record_every == 0 || step == steps)) {
            record(state, *u);
        } else if (stopped && traj.states.back().t != state.t) {
            // the stopping state may be too degenerate to diagnose in full
            try {
                record(state, u ? *u : eulerian_velocity(state));
            } catch (const Error&) {
                DiagRow row;
                row.t = state.t;
                row.min_phix = min_jacobian(state.phi);
                row.energy_A = row.h_q_norm = row.min_ux = row.m_l2 = kMissing;
                traj.rows.push_back(row);
                traj.states.push_back(state);
            }
        }
        if (stopped) break;
    }
    traj.stop_time = traj.states.back().t;
    fill_apriori_residuals(traj.rows);
    return traj;
}

FlowReconstruction flow_from_velocity(const std::vector<EulerState>& u_traj) {
    FlowReconstruction out;
    if (u_traj.empty()) return out;
    const Grid grid = u_traj.front().u.grid();
    out.maps.push_back(DiffeoMap::identity(grid));
    if (u_traj.size() == 1) return out;

    const double h = u_traj[1].t - u_traj[0].t;
    if (!(h > 0.0)) throw Error("flow_from_velocity needs increasing sample times");
    for (std::size_t k = 1; k < u_traj.size(); ++k) {
        const double gap = u_traj[k].t - u_traj[k - 1].t;
        if (std::abs(gap - h) > 1e-9 * std::max(1.0, h)) {
            throw Error("flow_from_velocity needs uniformly spaced samples");
        }
    }

    auto velocity_on_flow = [](const PeriodicField& u, const PeriodicField& f) {
        auto phi = DiffeoMap::try_make(f);
        if (!phi) throw LeftGroup{};
        return compose(u, *phi);
    };

    PeriodicField f = PeriodicField::zeros(grid);
    for (std::size_t k = 0; k + 1 < u_traj.size(); ++k) {
        const double t = u_traj[k].t;
        const PeriodicField u_mid = interpolate_in_time(u_traj, k, t + 0.5 * h);
        try {
            const PeriodicField k1 = velocity_on_flow(u_traj[k].u, f);
            const PeriodicField k2 = velocity_on_flow(u_mid, f + (0.5 * h) * k1);
            const PeriodicField k3 = velocity_on_flow(u_mid, f + (0.5 * h) * k2);
            const PeriodicField k4 = velocity_on_flow(u_traj[k + 1].u, f + h * k3);
            f += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
            auto phi = DiffeoMap::try_make(f);
            if (!phi) throw LeftGroup{};
            out.maps.push_back(std::move(*phi));
        } catch (const LeftGroup&) {
            out.status = RunStatus::stopped_jacobian_floor;
            break;
        } catch (const NumericalOverflow&) {
            out.status = RunStatus::stopped_overflow;
            break;
        }
    }
    return out;
}

}  // namespace geoflow
