"""Pseudospectral simulation and verification toolkit for the fractional
cubic Schrödinger / half-wave / Szegő family on the one-dimensional torus."""

__version__ = "0.1.0"

from .field import (
    TorusField,
    cubic_term,
    cubic_term_full,
    fractional_derivative,
    field_from_grid,
    from_modes,
    grid_values,
    inner_product,
    l2_norm,
    linf_norm,
    lp_norm,
    multiply,
    pointwise_modulus_squared,
    random_decaying_field,
    sobolev_norm,
    szego_project,
    zero_field,
)
from .dynamics import (
    BlowupError,
    ConservedReport,
    EvolutionSpec,
    PairField,
    PicardDivergenceError,
    Variant,
    conserved_quantities,
    evolve,
    linear_propagate,
    nonlinear_phase_step,
    pair_conserved,
    picard_iterate,
    szego_energy,
)
from .energies import (
    ModifiedEnergyParams,
    ModifiedEnergyReport,
    growth_gate,
    modified_energy,
    sandwich_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
