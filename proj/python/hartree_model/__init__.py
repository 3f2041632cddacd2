"""Radial Hartree atom: ground states, critical charge, beta ratio and bound checks."""

from ._hartree import (
    HartreeState,
    SolverConfig,
    beta_ratio,
    critical_charge,
    family_ids,
    grid_nodes,
    load_state,
    minimize_beta,
    solve,
    verify,
)

__all__ = [
    "HartreeState",
    "SolverConfig",
    "beta_ratio",
    "critical_charge",
    "family_ids",
    "grid_nodes",
    "load_state",
    "minimize_beta",
    "solve",
    "verify",
]
