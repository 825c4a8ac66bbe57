"""Kummer K3 patchwork geometry toolkit (python bindings)."""

from _kummer import (
    KummerError,
    KummerSurface,
    cutoff_jet,
    curvature,
    eh_kretschmann_closed_form,
    equator_stability,
    integrate_geodesic,
    laplacian_identity,
    metric,
    neck_correction,
    potential_jet,
    sectional_reconstruction,
    sigma_invariants,
    solve_radial_ma,
)

__all__ = [
    "KummerError",
    "KummerSurface",
    "cutoff_jet",
    "curvature",
    "eh_kretschmann_closed_form",
    "equator_stability",
    "integrate_geodesic",
    "laplacian_identity",
    "metric",
    "neck_correction",
    "potential_jet",
    "sectional_reconstruction",
    "sigma_invariants",
    "solve_radial_ma",
]
