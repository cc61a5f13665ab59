"""
Exact increment samplers: draws of X_h for families with a known marginal law.
"""

import math

import numpy as np

from src.core.error_models import DomainError, UnsupportedEngineError
from src.model.families import (
    DriftOnlySpec,
    GammaSpec,
    InverseGaussianSpec,
    JumpLaw,
    StableSpec,
    SubordinatorSpec,
    TruncatedGeneralSpec,
)
from src.simulate.rng import RngLike, as_generator


def supports_exact_increments(spec: SubordinatorSpec) -> bool:
    return not isinstance(spec, TruncatedGeneralSpec)


def positive_stable(alpha: float, size: int, gen: np.random.Generator) -> np.ndarray:
    """
    Standard positive stable draws with E e^{−λX} = e^{−λ^α}.

    Kanter's representation from one uniform angle on (0, π) and one
    standard exponential.
    """
    u = gen.uniform(0.0, math.pi, size)
    e = gen.standard_exponential(size)
    return (
        np.sin(alpha * u)
        / np.sin(u) ** (1.0 / alpha)
        * (np.sin((1.0 - alpha) * u) / e) ** ((1.0 - alpha) / alpha)
    )


def sample_increments(spec: SubordinatorSpec, h: float, size: int, rng: RngLike) -> np.ndarray:
    """
    Draw ``size`` independent copies of X_h.

    Args:
        spec: Subordinator specification
        h: Time step, h >= 0
        size: Number of draws
        rng: Stream key or generator

    Returns:
        Array of nonnegative increments

    Raises:
        DomainError: If h is negative
        UnsupportedEngineError: For families without an exact marginal law
    """
    if h < 0:
        raise DomainError(f"increment length must be >= 0, got {h}")
    if h == 0:
        return np.zeros(size)
    if not supports_exact_increments(spec):
        raise UnsupportedEngineError(
            f"{spec.family} has no exact increment sampler; use simulate_events instead"
        )

    gen = as_generator(rng)
    drift = spec.drift * h

    if isinstance(spec, DriftOnlySpec):
        return np.full(size, drift)
    if isinstance(spec, StableSpec):
        factor = (spec.scale * h) ** (1.0 / spec.alpha)
        return drift + factor * positive_stable(spec.alpha, size, gen)
    if isinstance(spec, GammaSpec):
        return drift + gen.gamma(spec.a * h, 1.0 / spec.b, size)
    if isinstance(spec, InverseGaussianSpec):
        return drift + gen.wald(spec.mean * h, spec.shape * h * h, size)

    counts = gen.poisson(spec.rate * h, size)
    if spec.jump == JumpLaw.FIXED:
        return drift + counts * spec.jump_size
    sums = np.zeros(size)
    hit = counts > 0
    sums[hit] = gen.gamma(counts[hit], spec.jump_mean)
    return drift + sums


def sample_increment(spec: SubordinatorSpec, h: float, rng: RngLike) -> float:
    """One exact draw of X_h; X_0 = 0."""
    return float(sample_increments(spec, h, 1, rng)[0])
