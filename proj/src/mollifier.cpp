#include "geoflow/mollifier.hpp"

#include <cmath>

namespace geoflow {

double bump_profile(double y) {
    const double r = 1.0 - 4.0 * y * y;
    if (r <= 0.0) return 0.0;
    return std::exp(-1.0 / r);
}

double bump_profile_derivative(double y) {
    const double r = 1.0 - 4.0 * y * y;
    if (r <= 0.0) return 0.0;
    // d/dy exp(-1/r) = exp(-1/r) * r'/r^2 with r' = -8y
    return std::exp(-1.0 / r) * (-8.0 * y) / (r * r);
}

BumpKernel bump_kernel(double epsilon, const Grid& grid) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw Error("mollifier width must lie in (0, 1], got " + std::to_string(epsilon));
    }
    if (epsilon * grid.size() < 16.0) {
        throw Error("kernel unresolved: eps * n = " + std::to_string(epsilon * grid.size()) +
                    " < 16");
    }
    const int n = grid.size();
    std::vector<double> raw(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        // signed distance to 0 on the circle; j and n-j give bitwise-equal values
        const int jj = j <= n / 2 ? j : n - j;
        const double x = grid.node(jj);
        raw[static_cast<std::size_t>(j)] = bump_profile(x / epsilon) / epsilon;
        sum += raw[static_cast<std::size_t>(j)];
    }
    const double scale = 1.0 / (sum * grid.spacing());
    for (double& v : raw) v *= scale;
    PeriodicField samples(grid, std::move(raw));

    Spectrum c = analyze(samples);
    std::vector<Complex> factors(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (std::abs(grid.mode_of(i)) > grid.max_resolved_mode()) continue;
        // even kernel: the transform is real
        factors[i] = kTwoPi * c.data()[i].real();
    }
    return BumpKernel(epsilon, std::move(samples), scale, std::move(factors));
}

PeriodicField mollify(const PeriodicField& u, const BumpKernel& kernel) {
    require_same_grid(u.grid(), kernel.grid());
    Spectrum c = analyze(u);
    auto data = c.data();
    const auto f = kernel.factors();
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= f[i];
    return synthesize(c);
}

PeriodicField mollifier_commutator(const PeriodicField& u, const PeriodicField& m,
                                   const BumpKernel& kernel) {
    require_same_grid(u.grid(), m.grid());
    require_same_grid(u.grid(), kernel.grid());
    const PeriodicField mx = derivative(m);
    return mollify(u * mx, kernel) - u * mollify(mx, kernel);
}

double commutator_ratio(const PeriodicField& u, const PeriodicField& m, const BumpKernel& kernel) {
    const double denom = derivative(u).max_abs() * sobolev_norm(m, 0.0);
    if (denom == 0.0) return 0.0;
    return sobolev_norm(mollifier_commutator(u, m, kernel), 0.0) / denom;
}

}  // namespace geoflow
