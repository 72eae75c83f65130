#include "geoflow/diagnostics.hpp"

#include <array>
#include <cmath>

namespace geoflow {

namespace {

constexpr std::array<std::pair<RunStatus, std::string_view>, 5> kStatusNames{{
    {RunStatus::completed, "completed"},
    {RunStatus::stopped_min_slope, "stopped:min_slope"},
    {RunStatus::stopped_jacobian_floor, "stopped:jacobian_floor"},
    {RunStatus::stopped_norm_ceiling, "stopped:norm_ceiling"},
    {RunStatus::stopped_overflow, "stopped:overflow"},
}};

}  // namespace

std::string_view to_string(RunStatus status) {
    for (const auto& [s, name] : kStatusNames) {
        if (s == status) return name;
    }
    return "unknown";
}

RunStatus parse_status(std::string_view text) {
    for (const auto& [s, name] : kStatusNames) {
        if (name == text) return s;
    }
    throw Error("unknown run status '" + std::string(text) + "'");
}

double min_slope(const PeriodicField& u) { return derivative(u).min(); }

double min_jacobian(const DiffeoMap& phi) { return phi.jacobian().min(); }

double apriori_residual(const DiagRow& left, const DiagRow& right) {
    const double dt = right.t - left.t;
    if (!(dt > 0.0)) throw Error("apriori_residual needs adjacent rows with increasing t");
    const double m2_left = left.m_l2 * left.m_l2;
    const double m2_right = right.m_l2 * right.m_l2;
    return (m2_right - m2_left) / dt + 3.0 * left.min_ux * m2_left;
}

PeriodicField bessel_potential(const PeriodicField& u, double sigma) {
    Spectrum c = analyze(u);
    const Grid& g = u.grid();
    auto data = c.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int k = g.mode_of(i);
        if (std::abs(k) > g.max_resolved_mode()) {
            data[i] = 0.0;
            continue;
        }
        data[i] *= std::pow(1.0 + static_cast<double>(k) * k, 0.5 * sigma);
    }
    return synthesize(c);
}

double kato_ponce_ratio(const PeriodicField& u, const PeriodicField& v, double s) {
    if (!(s > 0.0)) throw Error("kato_ponce_ratio requires s > 0");
    require_same_grid(u.grid(), v.grid());
    // constant multipliers commute with L^s
    if (u.max() == u.min()) return 0.0;
    const PeriodicField lhs_field = bessel_potential(u * v, s) - u * bessel_potential(v, s);
    const double lhs = sobolev_norm(lhs_field, 0.0);
    const double rhs = derivative(u).max_abs() * sobolev_norm(bessel_potential(v, s - 1.0), 0.0) +
                       sobolev_norm(bessel_potential(u, s), 0.0) * v.max_abs();
    if (rhs == 0.0) {
        if (lhs > 1e-12 * (sobolev_norm(u, 0.0) + sobolev_norm(v, 0.0))) {
            throw Error("kato_ponce_ratio: vanishing right-hand side with nonzero commutator");
        }
        return 0.0;
    }
    return lhs / rhs;
}

double chain_rule_residual(const PeriodicField& u, const PeriodicField& v, const DiffeoMap& phi) {
    require_same_grid(u.grid(), v.grid());
    const PeriodicField ux_at_phi = compose(derivative(u), phi);
    const PeriodicField vx = derivative(v);
    const auto& jac = phi.jacobian();
    double r = 0.0;
    for (std::size_t j = 0; j < vx.size(); ++j) {
        r = std::max(r, std::abs(ux_at_phi[j] - vx[j] / jac[j]));
    }
    return r;
}

}  // namespace geoflow
