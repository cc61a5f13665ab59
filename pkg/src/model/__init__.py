"""
Model module: subordinator specifications and their analytic quantities.

Module Structure:
- families: pydantic spec models (discriminated union on ``family``)
- laplace: Laplace exponent, Lévy tail, small-jump integrals, regular variation
- eligibility: covering-theorem hypothesis checks
- tails: example tail functions for the truncated-general family
"""

from src.model.families import (
    CompoundPoissonSpec,
    DriftOnlySpec,
    FAMILY_NAMES,
    GammaSpec,
    InverseGaussianSpec,
    JumpLaw,
    StableSpec,
    SubordinatorSpec,
    TruncatedGeneralSpec,
    parse_spec,
    spec_to_document,
)
from src.model.laplace import (
    LevyTail,
    RegularVariation,
    eval_phi,
    eval_phi_grid,
    eval_tail,
    has_infinite_activity,
    levy_tail,
    phi_by_quadrature,
    regular_variation,
    slowly_varying,
    small_jump_mean,
    tail_integral,
)
from src.model.eligibility import COMPOUND_POISSON_MESSAGE, EligibilityReport, check_eligible, validate

__all__ = [
    "CompoundPoissonSpec",
    "DriftOnlySpec",
    "FAMILY_NAMES",
    "GammaSpec",
    "InverseGaussianSpec",
    "JumpLaw",
    "StableSpec",
    "SubordinatorSpec",
    "TruncatedGeneralSpec",
    "parse_spec",
    "spec_to_document",
    "LevyTail",
    "RegularVariation",
    "eval_phi",
    "eval_phi_grid",
    "eval_tail",
    "has_infinite_activity",
    "levy_tail",
    "phi_by_quadrature",
    "regular_variation",
    "slowly_varying",
    "small_jump_mean",
    "tail_integral",
    "COMPOUND_POISSON_MESSAGE",
    "EligibilityReport",
    "check_eligible",
    "validate",
]
