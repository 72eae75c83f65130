#pragma once

// Orientation-preserving circle diffeomorphisms phi(x) = x + f(x) with a
// periodic displacement f, and the right action w -> w o phi.

#include <optional>
#include <vector>

#include "geoflow/spectral.hpp"

namespace geoflow {

/// Point evaluation of the truncated Fourier series of a real field
/// (modes |k| <= n/2 - 1) at arbitrary angles.
class FourierSeries {
public:
    explicit FourierSeries(const PeriodicField& w);

    double operator()(double x) const;
    /// Returns {w(x), w'(x)}.
    std::pair<double, double> value_and_derivative(double x) const;

private:
    std::vector<Complex> half_;  // c_0 .. c_K
};

class DiffeoMap {
public:
    /// Throws Error("not a diffeomorphism") unless min(1 + f_x) > 0 on the grid.
    explicit DiffeoMap(PeriodicField displacement);
    /// Same check, reported as an empty optional instead of an exception.
    static std::optional<DiffeoMap> try_make(PeriodicField displacement);

    static DiffeoMap identity(const Grid& grid);
    static DiffeoMap rotation(const Grid& grid, double shift);

    const Grid& grid() const noexcept { return displacement_.grid(); }
    const PeriodicField& displacement() const noexcept { return displacement_; }
    /// phi_x = 1 + f_x on the grid.
    const PeriodicField& jacobian() const noexcept { return jacobian_; }

    /// phi(x) for arbitrary x, using the Fourier series of f.
    double operator()(double x) const { return x + series_(x); }
    /// Lifted node images x_j + f_j.
    std::vector<double> node_images() const;

private:
    DiffeoMap(PeriodicField displacement, PeriodicField jacobian);

    PeriodicField displacement_;
    PeriodicField jacobian_;
    FourierSeries series_;
};

/// (w o phi)(x_j): the truncated series of w evaluated at phi(x_j).
PeriodicField compose(const PeriodicField& w, const DiffeoMap& phi);

/// phi^{-1} by per-node safeguarded Newton (bracketed, bisection fallback).
/// Throws Error("inversion failed") if a node does not converge in 50 iterations.
DiffeoMap invert_diffeo(const DiffeoMap& phi);

/// d_q(phi1, phi2) split into its three terms.
struct DqTerms {
    double chord = 0.0;     ///< max_x |exp(i phi1) - exp(i phi2)|
    double jacobian = 0.0;  ///< ||phi1_x - phi2_x||_{H^{q-1}}
    double inverse = 0.0;   ///< ||1/phi1_x - 1/phi2_x||_inf
    double total() const noexcept { return chord + jacobian + inverse; }
};

/// Requires q > 3/2.
DqTerms dq_terms(const DiffeoMap& phi1, const DiffeoMap& phi2, double q);
double dq_distance(const DiffeoMap& phi1, const DiffeoMap& phi2, double q);

}  // namespace geoflow
