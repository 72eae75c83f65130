#pragma once

#include <optional>

#include "geoflow/spectral.hpp"

namespace geoflow {

enum class Scheme { rk4 };
enum class DealiasRule { two_thirds, none };

/// Finite proxies for the blow-up limits.
struct StopRules {
    double min_slope_floor = -6.0;   ///< stop when min u_x drops below this
    double norm_ceiling = 1e6;       ///< stop when ||u||_{H^q_work} exceeds this
    double jacobian_floor = 1e-2;    ///< stop when min phi_x drops below this (Lagrangian runs)
};

struct SolverConfig {
    SymbolSpec symbol = SymbolSpec::bessel(1.0);
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::rk4;
    DealiasRule dealias = DealiasRule::two_thirds;
    int record_every = 1;
    StopRules stop;
    /// Working regularity for h_q_norm and d_q; defaults to order + 1 (2s + 1 for bessel(s)).
    std::optional<double> q_work;

    double working_q() const { return q_work.value_or(symbol.order() + 1.0); }
    /// Number of dt steps to reach t_end.
    long step_count() const;
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

}  // namespace geoflow
