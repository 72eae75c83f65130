#include "geoflow/diffeo.hpp"

#include <algorithm>
#include <cmath>

namespace geoflow {

// ---------------------------------------------------------------- FourierSeries

FourierSeries::FourierSeries(const PeriodicField& w) {
    const Spectrum c = analyze(w);
    const int k_max = w.grid().max_resolved_mode();
    half_.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) half_[static_cast<std::size_t>(k)] = c[k];
}

double FourierSeries::operator()(double x) const {
    const Complex z = std::polar(1.0, x);
    Complex zk = z;
    Complex acc = 0.0;
    for (std::size_t k = 1; k < half_.size(); ++k) {
        acc += half_[k] * zk;
        zk *= z;
    }
    return half_[0].real() + 2.0 * acc.real();
}

std::pair<double, double> FourierSeries::value_and_derivative(double x) const {
    const Complex z = std::polar(1.0, x);
    Complex zk = z;
    Complex acc = 0.0;
    Complex dacc = 0.0;
    for (std::size_t k = 1; k < half_.size(); ++k) {
        const Complex term = half_[k] * zk;
        acc += term;
        dacc += static_cast<double>(k) * term;
        zk *= z;
    }
    // d/dx of c_k e^{ikx} is ik c_k e^{ikx}; Re(i * dacc) = -Im(dacc)
    return {half_[0].real() + 2.0 * acc.real(), -2.0 * dacc.imag()};
}

// ---------------------------------------------------------------- DiffeoMap

DiffeoMap::DiffeoMap(PeriodicField displacement, PeriodicField jacobian)
    : displacement_(std::move(displacement)), jacobian_(std::move(jacobian)),
      series_(displacement_) {}

namespace {

PeriodicField jacobian_of(const PeriodicField& displacement) {
    PeriodicField jac = derivative(displacement);
    jac += PeriodicField::constant(displacement.grid(), 1.0);
    return jac;
}

PeriodicField checked_jacobian(const PeriodicField& displacement) {
    PeriodicField jac = jacobian_of(displacement);
    if (!(jac.min() > 0.0)) throw Error("not a diffeomorphism: Jacobian min(1 + f_x) <= 0");
    return jac;
}

}  // namespace

DiffeoMap::DiffeoMap(PeriodicField displacement)
    : DiffeoMap(displacement, checked_jacobian(displacement)) {}

std::optional<DiffeoMap> DiffeoMap::try_make(PeriodicField displacement) {
    PeriodicField jac = jacobian_of(displacement);
    if (!(jac.min() > 0.0)) return std::nullopt;
    return DiffeoMap(std::move(displacement), std::move(jac));
}

DiffeoMap DiffeoMap::identity(const Grid& grid) { return DiffeoMap(PeriodicField::zeros(grid)); }

DiffeoMap DiffeoMap::rotation(const Grid& grid, double shift) {
    return DiffeoMap(PeriodicField::constant(grid, shift));
}

std::vector<double> DiffeoMap::node_images() const {
    std::vector<double> out(displacement_.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = grid().node(static_cast<int>(j)) + displacement_[j];
    }
    return out;
}

// ---------------------------------------------------------------- compose / invert

PeriodicField compose(const PeriodicField& w, const DiffeoMap& phi) {
    require_same_grid(w.grid(), phi.grid());
    const FourierSeries series(w);
    const auto images = phi.node_images();
    std::vector<double> out(images.size());
    for (std::size_t j = 0; j < images.size(); ++j) out[j] = series(images[j]);
    return PeriodicField(w.grid(), std::move(out));
}

DiffeoMap invert_diffeo(const DiffeoMap& phi) {
    constexpr int kMaxIterations = 50;
    constexpr double kTolerance = 1e-12;

    const Grid& grid = phi.grid();
    const PeriodicField& f = phi.displacement();
    const FourierSeries series(f);
    const double spread = f.max() - f.min();
    const double pad = 0.1 * spread + 1e-3;

    std::vector<double> inv(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double y = grid.node(static_cast<int>(j));
        // phi(x) - x = f(x) lies in [min f, max f], so the root is bracketed by
        // [y - max f, y - min f]; pad for series overshoot between nodes.
        double lo = y - f.max() - pad;
        double hi = y - f.min() + pad;
        while (lo + series(lo) - y > 0.0) lo -= pad + spread;
        while (hi + series(hi) - y < 0.0) hi += pad + spread;

        double x = std::clamp(y - series(y), lo, hi);
        bool converged = false;
        for (int it = 0; it < kMaxIterations; ++it) {
            const auto [fx, dfx] = series.value_and_derivative(x);
            const double g = x + fx - y;
            if (std::abs(g) <= kTolerance) {
                converged = true;
                break;
            }
            if (g > 0.0) hi = x; else lo = x;
            const double slope = 1.0 + dfx;
            double next = slope > 0.0 ? x - g / slope : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (hi - lo <= kTolerance) {
                x = next;
                converged = true;
                break;
            }
            x = next;
        }
        if (!converged) {
            throw Error("inversion failed at node " + std::to_string(j) +
                        " (near-degenerate Jacobian)");
        }
        inv[j] = x - y;
    }
    return DiffeoMap(PeriodicField(grid, std::move(inv)));
}

// ---------------------------------------------------------------- d_q

DqTerms dq_terms(const DiffeoMap& phi1, const DiffeoMap& phi2, double q) {
    if (!(q > 1.5)) throw Error("d_q requires q > 3/2");
    require_same_grid(phi1.grid(), phi2.grid());
    DqTerms t;
    const auto& f1 = phi1.displacement();
    const auto& f2 = phi2.displacement();
    for (std::size_t j = 0; j < f1.size(); ++j) {
        // |e^{ia} - e^{ib}| = 2 |sin((a - b)/2)|; the node x_j cancels
        t.chord = std::max(t.chord, 2.0 * std::abs(std::sin(0.5 * (f1[j] - f2[j]))));
    }
    t.jacobian = sobolev_norm(phi1.jacobian() - phi2.jacobian(), q - 1.0);
    const auto& j1 = phi1.jacobian();
    const auto& j2 = phi2.jacobian();
    for (std::size_t j = 0; j < j1.size(); ++j) {
        t.inverse = std::max(t.inverse, std::abs(1.0 / j1[j] - 1.0 / j2[j]));
    }
    return t;
}

double dq_distance(const DiffeoMap& phi1, const DiffeoMap& phi2, double q) {
    return dq_terms(phi1, phi2, q).total();
}

}  // namespace geoflow
