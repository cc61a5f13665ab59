"""
Potential module: U(δ) and U_q(δ) by independent routes, and δ-grids.

Module Structure:
- models: PotentialEstimate, DeltaGrid
- monte_carlo: first-passage means and the two U_q pipelines
- series: alternating convolution series (positive drift)
- analytic: asymptotics, marginal-law quadrature, bounds, best-available choice
- grid: geometric δ-grid solver
"""

from src.potential.models import DeltaGrid, PotentialEstimate, PotentialMethod
from src.potential.monte_carlo import potential_mc, potential_q_two_ways
from src.potential.series import potential_series
from src.potential.analytic import (
    LOWER_BAND,
    UPPER_BAND,
    deterministic_available,
    potential_asymptotic,
    potential_best,
    potential_bounds,
    potential_quadrature,
    quadrature_supported,
)
from src.potential.grid import potential_evaluator, solve_delta_grid

__all__ = [
    "DeltaGrid",
    "PotentialEstimate",
    "PotentialMethod",
    "potential_mc",
    "potential_q_two_ways",
    "potential_series",
    "LOWER_BAND",
    "UPPER_BAND",
    "deterministic_available",
    "potential_asymptotic",
    "potential_best",
    "potential_bounds",
    "potential_quadrature",
    "quadrature_supported",
    "potential_evaluator",
    "solve_delta_grid",
]
