#pragma once

// Pseudospectral evaluation of the quadratic terms shared by the Eulerian and
// Lagrangian solvers, with the symbol and derivative tables built once.

#include <vector>

#include "geoflow/solver_config.hpp"
#include "geoflow/spectral.hpp"

namespace geoflow::detail {

class QuadraticOps {
public:
    QuadraticOps(const SymbolSpec& a, const Grid& grid, DealiasRule rule);

    const Grid& grid() const noexcept { return a_.grid(); }
    const Multiplier& inertia() const noexcept { return a_; }

    /// -A^{-1} D[u (Au)_x + 2 (Au) u_x]  (D = dealias)
    PeriodicField euler_rhs(const PeriodicField& u) const;
    /// A^{-1} D[A(u u_x) - u A(u_x) - 2 (Au) u_x]
    PeriodicField s_operator(const PeriodicField& u) const;
    /// -D[m_x u + 2 m u_x]
    PeriodicField ep_rhs(const PeriodicField& m, const PeriodicField& u) const;
    /// D[u u_x]
    PeriodicField advection(const PeriodicField& u) const;

    PeriodicField momentum(const PeriodicField& u) const { return a_.apply(u); }
    PeriodicField velocity(const PeriodicField& m) const;

    void dealias_in_place(Spectrum& c) const;

private:
    /// Spectrum of a quadratic term: dealiased, mean removed for mean_zero_only symbols.
    void finish_quadratic(Spectrum& c) const;

    Multiplier a_;
    std::vector<Complex> ik_;
    std::vector<double> mask_;
};

}  // namespace geoflow::detail
