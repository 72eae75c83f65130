#include "quadratic_ops.hpp"

#include <cmath>

#include "fft.hpp"

namespace geoflow::detail {

namespace {

PeriodicField to_field(const Grid& grid, std::span<const Complex> c) {
    return PeriodicField(grid, inverse_dft_real(c));
}

std::vector<Complex> times(std::span<const Complex> c, std::span<const Complex> factor) {
    std::vector<Complex> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * factor[i];
    return out;
}

}  // namespace

QuadraticOps::QuadraticOps(const SymbolSpec& a, const Grid& grid, DealiasRule rule)
    : a_(a, grid), ik_(static_cast<std::size_t>(grid.size())), mask_(static_cast<std::size_t>(grid.size())) {
    const int cutoff = rule == DealiasRule::two_thirds ? grid.dealias_cutoff() : grid.max_resolved_mode();
    for (std::size_t i = 0; i < ik_.size(); ++i) {
        const int k = grid.mode_of(i);
        const bool resolved = std::abs(k) <= grid.max_resolved_mode();
        ik_[i] = resolved ? Complex(0.0, k) : Complex(0.0);
        mask_[i] = std::abs(k) <= cutoff ? 1.0 : 0.0;
    }
}

void QuadraticOps::dealias_in_place(Spectrum& c) const {
    auto d = c.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= mask_[i];
}

void QuadraticOps::finish_quadratic(Spectrum& c) const {
    dealias_in_place(c);
    // For mean_zero_only symbols the quadratic terms integrate to zero
    // analytically; what remains in mode 0 is rounding.
    if (a_.symbol().invertible_on() == Invertibility::mean_zero_only) c.data()[0] = 0.0;
}

PeriodicField QuadraticOps::euler_rhs(const PeriodicField& u) const {
    const Grid& g = grid();
    const Spectrum uh = analyze(u);
    const auto mh = times(uh.data(), a_.values());
    const PeriodicField au = to_field(g, mh);
    const PeriodicField dau = to_field(g, times(mh, ik_));
    const PeriodicField du = to_field(g, times(uh.data(), ik_));

    std::vector<double> p(u.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = u[j] * dau[j] + 2.0 * au[j] * du[j];
    Spectrum ph(g, forward_dft(p));
    finish_quadratic(ph);
    a_.solve_in_place(ph);
    for (auto& c : ph.data()) c = -c;
    return to_field(g, ph.data());
}

PeriodicField QuadraticOps::s_operator(const PeriodicField& u) const {
    const Grid& g = grid();
    const Spectrum uh = analyze(u);
    const auto duh = times(uh.data(), ik_);
    const PeriodicField du = to_field(g, duh);
    const PeriodicField adu = to_field(g, times(duh, a_.values()));
    const PeriodicField au = to_field(g, times(uh.data(), a_.values()));

    std::vector<double> p(u.size());
    std::vector<double> q(u.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = u[j] * du[j];
        q[j] = u[j] * adu[j] + 2.0 * au[j] * du[j];
    }
    const auto aph = times(forward_dft(p), a_.values());
    const auto qh = forward_dft(q);
    std::vector<Complex> r(aph.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = aph[i] - qh[i];
    Spectrum rh(g, std::move(r));
    finish_quadratic(rh);
    a_.solve_in_place(rh);
    return to_field(g, rh.data());
}

PeriodicField QuadraticOps::ep_rhs(const PeriodicField& m, const PeriodicField& u) const {
    require_same_grid(m.grid(), u.grid());
    const Grid& g = grid();
    const PeriodicField dm = to_field(g, times(analyze(m).data(), ik_));
    const PeriodicField du = to_field(g, times(analyze(u).data(), ik_));
    std::vector<double> p(u.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = dm[j] * u[j] + 2.0 * m[j] * du[j];
    Spectrum ph(g, forward_dft(p));
    dealias_in_place(ph);
    for (auto& c : ph.data()) c = -c;
    return to_field(g, ph.data());
}

PeriodicField QuadraticOps::advection(const PeriodicField& u) const {
    const Grid& g = grid();
    const PeriodicField du = to_field(g, times(analyze(u).data(), ik_));
    Spectrum ph = analyze(u * du);
    dealias_in_place(ph);
    return to_field(g, ph.data());
}

PeriodicField QuadraticOps::velocity(const PeriodicField& m) const {
    Spectrum mh = analyze(m);
    if (a_.symbol().invertible_on() == Invertibility::mean_zero_only) mh.data()[0] = 0.0;
    a_.solve_in_place(mh);
    return to_field(grid(), mh.data());
}

}  // namespace geoflow::detail
