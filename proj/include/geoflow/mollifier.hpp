#pragma once

// Friedrichs mollifier on the circle: convolution with the rescaled bump
// rho_eps(x) = rho(x/eps)/eps, where rho is the standard exponential bump
// supported in (-1/2, 1/2).

#include <vector>

#include "geoflow/spectral.hpp"

namespace geoflow {

/// Unnormalized base profile exp(-1/(1-(2y)^2)) on |y| < 1/2, zero outside.
double bump_profile(double y);
/// d/dy of bump_profile.
double bump_profile_derivative(double y);

class BumpKernel {
public:
    double epsilon() const noexcept { return epsilon_; }
    const PeriodicField& samples() const noexcept { return samples_; }
    const Grid& grid() const noexcept { return samples_.grid(); }
    /// Normalization so that rho_eps(x) = scale * bump_profile(x/eps) / eps.
    double profile_scale() const noexcept { return profile_scale_; }
    /// Fourier factor of the convolution, 2*pi * c_n(rho_eps), FFT order, Nyquist zero.
    std::span<const Complex> factors() const noexcept { return factors_; }

private:
    friend BumpKernel bump_kernel(double epsilon, const Grid& grid);
    BumpKernel(double epsilon, PeriodicField samples, double scale, std::vector<Complex> factors)
        : epsilon_(epsilon), samples_(std::move(samples)), profile_scale_(scale),
          factors_(std::move(factors)) {}

    double epsilon_;
    PeriodicField samples_;
    double profile_scale_;
    std::vector<Complex> factors_;
};

/// Samples rho_eps on the grid with unit grid-quadrature weight.
/// Requires 0 < eps <= 1 and eps * n >= 16, else Error("kernel unresolved").
BumpKernel bump_kernel(double epsilon, const Grid& grid);

/// J_eps u = rho_eps * u, computed as a Fourier multiplier.
PeriodicField mollify(const PeriodicField& u, const BumpKernel& kernel);

/// K_eps(m) = J_eps(u m_x) - u J_eps(m_x).
PeriodicField mollifier_commutator(const PeriodicField& u, const PeriodicField& m,
                                   const BumpKernel& kernel);

/// ||K_eps(m)||_{L2} / (||u_x||_inf ||m||_{L2}); 0 when the denominator vanishes.
double commutator_ratio(const PeriodicField& u, const PeriodicField& m, const BumpKernel& kernel);

}  // namespace geoflow
