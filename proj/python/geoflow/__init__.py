"""Spectral geodesic flows on the circle diffeomorphism group.

Fields are one-dimensional numpy arrays of samples on the uniform grid
x_j = 2 pi j / n; the grid size is taken from the array length.
"""

from ._core import (
    ConfigError,
    GeoflowError,
    Symbol,
    apply_symbol,
    commutator_ratio,
    compose,
    dealias,
    derivative,
    dq_distance,
    energy_norm,
    euler_rhs,
    integrate_euler,
    integrate_geodesic,
    invert,
    kato_ponce_ratio,
    min_slope,
    mollify,
    nodes,
    solve_symbol,
    sobolev_norm,
)

__all__ = [
    "ConfigError",
    "GeoflowError",
    "Symbol",
    "apply_symbol",
    "commutator_ratio",
    "compose",
    "dealias",
    "derivative",
    "dq_distance",
    "energy_norm",
    "euler_rhs",
    "integrate_euler",
    "integrate_geodesic",
    "invert",
    "kato_ponce_ratio",
    "min_slope",
    "mollify",
    "nodes",
    "solve_symbol",
    "sobolev_norm",
]
