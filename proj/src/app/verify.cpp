#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "geoflow/commands.hpp"
#include "geoflow/diffeo.hpp"
#include "geoflow/euler_solver.hpp"
#include "geoflow/lagrangian_solver.hpp"
#include "geoflow/mollifier.hpp"

namespace geoflow::cli {

namespace {

std::string sci(const char* label, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%.3e", label, v);
    return buf;
}

PeriodicField random_field(const Grid& g, int max_mode, std::mt19937_64& rng, bool zero_mean = false) {
    std::normal_distribution<double> normal;
    std::vector<std::pair<double, double>> c(static_cast<std::size_t>(max_mode) + 1);
    for (int k = 0; k <= max_mode; ++k) {
        const double decay = 1.0 / (1.0 + k * k);
        c[k] = {normal(rng) * decay, k == 0 ? 0.0 : normal(rng) * decay};
    }
    if (zero_mean) c[0] = {0.0, 0.0};
    return PeriodicField::sample(g, [&](double x) {
        double s = 0.0;
        for (int k = 0; k <= max_mode; ++k) s += c[k].first * std::cos(k * x) + c[k].second * std::sin(k * x);
        return s;
    });
}

DiffeoMap random_diffeo(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-0.08, 0.08);
    const double a1 = amp(rng), b1 = amp(rng), a2 = amp(rng), shift = amp(rng);
    return DiffeoMap(PeriodicField::sample(
        g, [&](double x) { return shift + a1 * std::cos(x) + b1 * std::sin(x) + a2 * std::sin(2 * x); }));
}

double rel_l2(const PeriodicField& a, const PeriodicField& b) {
    const double ref = sobolev_norm(b, 0.0);
    const double diff = sobolev_norm(a - b, 0.0);
    return ref > 0.0 ? diff / ref : diff;
}

using Check = std::function<PropertyResult()>;

PropertyResult spectral_exactness(bool corrupt) {
    // A on the pure mode e_k must return a(k) e_k on the dealiased band.
    const Grid g(128);
    const SymbolSpec builtin = SymbolSpec::bessel(1.5);
    SymbolSpec a = builtin;
    if (corrupt) {
        std::vector<double> table;
        for (int k = 0; k <= g.size() / 2; ++k) table.push_back(std::pow(1.0 + k * k, 1.5));
        table[7] *= 1.001;
        a = SymbolSpec::custom(std::move(table), 3.0, Invertibility::all_modes);
    }
    double worst = 0.0;
    for (int k = -g.dealias_cutoff(); k <= g.dealias_cutoff(); ++k) {
        Spectrum e = Spectrum::zeros(g);
        e.set(k, 1.0);
        const Spectrum out = apply_symbol(a, e);
        const double ak = std::pow(1.0 + k * k, 1.5);
        double err = 0.0;
        for (int n = -g.size() / 2; n < g.size() / 2; ++n) err += std::norm(out[n] - (n == k ? ak : 0.0));
        worst = std::max(worst, std::sqrt(err) / ak);
    }
    return {"spectral_exactness" + std::string(corrupt ? " (corrupted symbol)" : ""), worst <= 1e-12,
            sci("max_rel_err", worst)};
}

PropertyResult order_certificate() {
    const Grid g(256);
    double worst = 0.0;
    for (double s : {0.5, 1.0, 1.75, 2.0}) {
        const auto a = SymbolSpec::bessel(s);
        worst = std::max({worst, std::abs(order_constant(a, g) - 1.0), std::abs(inverse_order_constant(a, g) - 1.0)});
    }
    return {"symbol_order_certificate", worst <= 1e-12, sci("max_dev_from_1", worst)};
}

PropertyResult parseval(std::mt19937_64& rng) {
    const Grid g(128);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto u = random_field(g, 40, rng);
        double ms = 0.0;
        for (double v : u.values()) ms += v * v;
        ms /= g.size();
        worst = std::max(worst, std::abs(sobolev_norm(u, 0.0) - std::sqrt(ms)) / std::sqrt(ms));
    }
    return {"parseval", worst <= 1e-12, sci("max_rel_err", worst)};
}

PropertyResult solve_roundtrip(std::mt19937_64& rng) {
    const Grid g(128);
    double worst = 0.0;
    for (const auto& a : {SymbolSpec::bessel(1.0), SymbolSpec::helmholtz_power(2), SymbolSpec::clm()}) {
        const auto u = random_field(g, 40, rng, a.invertible_on() == Invertibility::mean_zero_only);
        worst = std::max(worst, rel_l2(solve_symbol(a, apply_symbol(a, u)), u));
    }
    return {"apply_solve_roundtrip", worst <= 1e-12, sci("max_rel_err", worst)};
}

PropertyResult mollifier_kernel() {
    const Grid g(1024);
    const auto k = bump_kernel(1.0 / 32.0, g);
    double weight = 0.0, odd = 0.0, outside = 0.0;
    const int n = g.size();
    for (int j = 0; j < n; ++j) {
        weight += k.samples()[j] * g.spacing();
        odd = std::max(odd, std::abs(k.samples()[j] - k.samples()[(n - j) % n]));
        const double d = std::min(g.node(j), kTwoPi - g.node(j));
        if (d >= 0.5 / 32.0) outside = std::max(outside, std::abs(k.samples()[j]));
    }
    const bool ok = std::abs(weight - 1.0) <= 1e-12 && odd == 0.0 && outside == 0.0;
    return {"mollifier_kernel", ok,
            sci("weight_err", std::abs(weight - 1.0)) + " " + sci("asym", odd) + " " + sci("outside", outside)};
}

PropertyResult mollifier_convergence() {
    const Grid g(1024);
    const auto u = PeriodicField::sample(g, [](double x) { return std::cos(x) + std::cos(3 * x); });
    const double ref = sobolev_norm(u, 2.0);
    double prev = INFINITY, last = 0.0;
    bool decreasing = true;
    for (double eps : {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32}) {
        last = sobolev_norm(mollify(u, bump_kernel(eps, g)) - u, 2.0) / ref;
        decreasing = decreasing && last < prev;
        prev = last;
    }
    return {"mollifier_convergence", decreasing && last < 1e-3, sci("rel_H2_err_eps_1/32", last)};
}

PropertyResult commutator_uniformity() {
    const Grid g(1024);
    const auto u = PeriodicField::sample(g, [](double x) { return std::sin(x); });
    const auto m = PeriodicField::sample(g, [](double x) { return std::cos(3 * x); });
    const double base = commutator_ratio(u, m, bump_kernel(1.0, g));
    double worst = 0.0;
    for (double eps : {1.0 / 2, 1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32})
        worst = std::max(worst, commutator_ratio(u, m, bump_kernel(eps, g)));
    return {"commutator_uniformity", worst <= 2.0 * base, sci("max_ratio/ratio_eps1", worst / base)};
}

PropertyResult ep_consistency() {
    const Grid g(128);
    const auto a = SymbolSpec::bessel(1.0);
    const auto u = PeriodicField::sample(g, [](double x) { return std::cos(x) + 0.3 * std::sin(2 * x); });
    const auto lhs = apply_symbol(a, euler_rhs(u, a));
    const auto rhs = ep_rhs(apply_symbol(a, u), u);
    const double err = rel_l2(lhs, rhs);
    return {"ep_consistency", err <= 1e-10, sci("rel_err", err)};
}

PropertyResult frame_equivalence() {
    const Grid g(64);
    SolverConfig cfg;
    cfg.symbol = SymbolSpec::bessel(2.0);
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    cfg.record_every = 50;
    const auto u0 = PeriodicField::sample(g, [](double x) { return std::cos(x); });
    const auto e = integrate_euler(u0, cfg);
    const auto l = integrate_geodesic(DiffeoMap::identity(g), u0, cfg);
    const double gap = rel_l2(eulerian_velocity(l.states.back()), e.states.back().u);
    return {"frame_equivalence", gap <= 1e-6, sci("rel_l2_gap_t0.5", gap)};
}

PropertyResult energy_conservation() {
    const Grid g(64);
    SolverConfig cfg;
    cfg.symbol = SymbolSpec::bessel(2.0);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.record_every = 1000;
    const auto u0 = PeriodicField::sample(g, [](double x) { return std::cos(x) + 0.5 * std::sin(2 * x); });
    const auto tr = integrate_euler(u0, cfg);
    const double e0 = tr.rows.front().energy_A;
    double drift = 0.0;
    for (const auto& r : tr.rows) drift = std::max(drift, std::abs(r.energy_A - e0) / e0);
    return {"energy_conservation", tr.status == RunStatus::completed && drift <= 1e-8, sci("rel_drift", drift)};
}

PropertyResult apriori_inequality() {
    const Grid g(64);
    SolverConfig cfg;
    cfg.symbol = SymbolSpec::bessel(1.0);
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    const auto u0 = PeriodicField::sample(g, [](double x) { return -std::sin(x); });
    const auto tr = integrate_euler(u0, cfg);
    double worst = -INFINITY;
    for (const auto& r : tr.rows)
        if (std::isfinite(r.apriori_residual)) worst = std::max(worst, r.apriori_residual);
    return {"apriori_inequality", worst <= 1e-3, sci("max_residual", worst)};
}

PropertyResult kato_ponce() {
    double worst = 0.0;
    for (double s : {1.6, 2.0, 2.5}) {
        double r256 = 0.0, r512 = 0.0;
        for (int j = 1; j <= 4; ++j) {
            for (int k = 1; k <= 4; ++k) {
                auto make = [&](int n) {
                    const Grid g(n);
                    const auto u = PeriodicField::sample(g, [j](double x) { return std::sin(j * x); });
                    const auto v = PeriodicField::sample(g, [k](double x) { return std::cos(k * x); });
                    return kato_ponce_ratio(u, v, s);
                };
                r256 = std::max(r256, make(256));
                r512 = std::max(r512, make(512));
            }
        }
        worst = std::max(worst, std::abs(r512 - r256) / r256);
    }
    return {"kato_ponce_stability", worst < 0.2, sci("max_rel_change_256_to_512", worst)};
}

PropertyResult dq_axioms(std::mt19937_64& rng) {
    const Grid g(128);
    bool ok = true;
    double worst_tri = -INFINITY;
    for (int i = 0; i < 20; ++i) {
        const auto a = random_diffeo(g, rng), b = random_diffeo(g, rng), c = random_diffeo(g, rng);
        const double ab = dq_distance(a, b, 2.0), ba = dq_distance(b, a, 2.0);
        const double ac = dq_distance(a, c, 2.0), cb = dq_distance(c, b, 2.0);
        ok = ok && dq_distance(a, a, 2.0) == 0.0 && std::abs(ab - ba) <= 1e-14 * std::max(1.0, ab);
        worst_tri = std::max(worst_tri, ab - (ac + cb));
    }
    ok = ok && worst_tri <= 1e-12;
    return {"dq_metric_axioms", ok, sci("max_triangle_excess", worst_tri)};
}

PropertyResult inversion_roundtrip(std::mt19937_64& rng) {
    const Grid g(128);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto phi = random_diffeo(g, rng);
        const auto inv = invert_diffeo(phi);
        // phi(psi(x_j)) = x_j
        for (int j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(phi(inv(g.node(j))) - g.node(j)));
    }
    return {"inversion_roundtrip", worst <= 1e-10, sci("max_err", worst)};
}

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
    std::mt19937_64 rng(20240531);
    std::vector<Check> checks = {
        [&] { return spectral_exactness(options.corrupt_symbol); },
        [] { return order_certificate(); },
        [&] { return parseval(rng); },
        [&] { return solve_roundtrip(rng); },
        [] { return mollifier_kernel(); },
        [] { return mollifier_convergence(); },
        [] { return commutator_uniformity(); },
        [] { return ep_consistency(); },
        [] { return frame_equivalence(); },
        [] { return energy_conservation(); },
        [] { return apriori_inequality(); },
        [] { return kato_ponce(); },
        [&] { return dq_axioms(rng); },
        [&] { return inversion_roundtrip(rng); },
    };
    std::vector<PropertyResult> out;
    for (auto& check : checks) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({"(exception)", false, e.what()});
        }
    }
    return out;
}

}  // namespace geoflow::cli
