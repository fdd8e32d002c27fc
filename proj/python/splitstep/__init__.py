"""Iterative operator splitting with exponential propagators."""

from ._splitstep import (
    DimensionError,
    GridIncompatible,
    InsufficientData,
    SingularMatrix,
    SingularPotential,
    block_semigroup_propagator,
    estimate_order,
    exact_solution_2x2,
    expm,
    laplace_c2,
    laplace_c3,
    phi_k,
    run_study,
    solve_oscillator,
    solve_split,
)

__all__ = [
    "DimensionError",
    "GridIncompatible",
    "InsufficientData",
    "SingularMatrix",
    "SingularPotential",
    "block_semigroup_propagator",
    "estimate_order",
    "exact_solution_2x2",
    "expm",
    "laplace_c2",
    "laplace_c3",
    "phi_k",
    "run_study",
    "solve_oscillator",
    "solve_split",
]
