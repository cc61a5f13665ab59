"""
Jump-size samplers for the normalised Lévy measure restricted to (ε, ∞).

Jumps above ε arrive at rate Π̄(ε); given an arrival, its size has survival
function Π̄(y)/Π̄(ε) for y > ε.
"""

from typing import Tuple

import numpy as np
from scipy import optimize

from src.core.error_models import DomainError
from src.core.logging import get_logger
from src.model.families import (
    CompoundPoissonSpec,
    DriftOnlySpec,
    GammaSpec,
    InverseGaussianSpec,
    JumpLaw,
    StableSpec,
    SubordinatorSpec,
    TruncatedGeneralSpec,
)
from src.model.laplace import eval_tail, has_infinite_activity

logger = get_logger(__name__)


def effective_epsilon(spec: SubordinatorSpec, eps: float) -> float:
    """ε actually used for ``spec``: never below the truncation of a caller tail."""
    if isinstance(spec, TruncatedGeneralSpec) and eps < spec.truncation:
        return spec.truncation
    return eps


def jump_rate(spec: SubordinatorSpec, eps: float) -> float:
    """
    Arrival rate of jumps larger than ε.

    Raises:
        DomainError: If ε = 0 for an infinite-activity family
    """
    if eps < 0:
        raise DomainError(f"epsilon must be >= 0, got {eps}")
    if isinstance(spec, DriftOnlySpec):
        return 0.0
    if eps == 0:
        if has_infinite_activity(spec):
            raise DomainError(f"{spec.family} has infinite activity; events engine needs epsilon > 0")
        if isinstance(spec, CompoundPoissonSpec):
            return spec.rate
        return eval_tail(spec, 1e-300)
    return eval_tail(spec, eps)


def _envelope_masses(eps: float, power: float, beta: float, y0: float) -> Tuple[float, float]:
    """
    Masses of the two proposal envelopes, up to a common factor.

    Low envelope e^{−βε} y^{−1−p} on (ε, y0), high envelope y0^{−1−p} e^{−βy}
    on (y0, ∞). Both are scaled by e^{βε} so nothing underflows when βε is large.
    """
    if y0 <= eps:
        return 0.0, 1.0
    if power == 0.0:
        low = np.log(y0 / eps)
    else:
        low = (eps ** -power - y0 ** -power) / power
    high = y0 ** (-1.0 - power) * np.exp(-beta * (y0 - eps)) / beta
    return float(low), float(high)


def _two_region(eps: float, power: float, beta: float, size: int, gen: np.random.Generator) -> np.ndarray:
    """
    Rejection sampler for the density ∝ y^{−1−p} e^{−βy} on (ε, ∞).

    Below y0 = max(ε, 1/β) the proposal is the pure power law (acceptance
    e^{−β(y−ε)} ≥ e^{−1}); above y0 it is y0 + Exp(β) (acceptance (y0/y)^{1+p}).
    Regions are picked in proportion to the envelope masses, so accepted
    draws follow the target on both sides of y0.
    """
    y0 = max(eps, 1.0 / beta)
    low_mass, high_mass = _envelope_masses(eps, power, beta, y0)
    p_low = low_mass / (low_mass + high_mass)

    out = np.empty(size)
    filled = 0
    while filled < size:
        need = size - filled
        batch = max(2 * need, 16)
        low = gen.random(batch) < p_low
        y = np.empty(batch)
        accept_prob = np.empty(batch)

        n_low = int(low.sum())
        if n_low:
            u = gen.random(n_low)
            if power == 0.0:
                y_low = eps * (y0 / eps) ** u
            else:
                a, b = eps ** -power, y0 ** -power
                y_low = (a - u * (a - b)) ** (-1.0 / power)
            y[low] = y_low
            accept_prob[low] = np.exp(-beta * (y_low - eps))

        n_high = batch - n_low
        if n_high:
            y_high = y0 + gen.exponential(1.0 / beta, n_high)
            y[~low] = y_high
            accept_prob[~low] = (y0 / y_high) ** (1.0 + power)

        kept = y[gen.random(batch) < accept_prob][:need]
        out[filled:filled + kept.size] = kept
        filled += kept.size
    return out


def _invert_tail(spec: SubordinatorSpec, eps: float, size: int, gen: np.random.Generator) -> np.ndarray:
    """Solve Π̄(y) = V Π̄(ε) for uniform V by bracketing and Brent's method."""
    top = eval_tail(spec, eps)
    out = np.empty(size)
    for i, v in enumerate(gen.random(size)):
        target = v * top
        hi = max(2.0 * eps, eps + 1.0)
        while eval_tail(spec, hi) > target:
            hi *= 2.0
            if hi > 1e300:
                raise DomainError(f"tail of {spec.family} does not decay; cannot sample jumps")
        out[i] = optimize.brentq(lambda y: eval_tail(spec, y) - target, eps, hi, xtol=1e-14 * hi, rtol=1e-12)
    return out


def sample_jumps(spec: SubordinatorSpec, eps: float, size: int, gen: np.random.Generator) -> np.ndarray:
    """
    Draw ``size`` jump sizes from Π restricted to (ε, ∞), normalised.

    For finite-activity families ε may be 0 (every jump is kept).
    """
    if size == 0:
        return np.empty(0)
    if isinstance(spec, DriftOnlySpec):
        raise DomainError("drift-only family has no jumps")

    if isinstance(spec, StableSpec):
        return eps * gen.random(size) ** (-1.0 / spec.alpha)
    if isinstance(spec, GammaSpec):
        return _two_region(eps, 0.0, spec.b, size, gen)
    if isinstance(spec, InverseGaussianSpec):
        beta = spec.shape / (2.0 * spec.mean ** 2)
        return _two_region(eps, 0.5, beta, size, gen)
    if isinstance(spec, CompoundPoissonSpec):
        if spec.jump == JumpLaw.FIXED:
            return np.full(size, spec.jump_size)
        # memoryless: the excess over ε is again exponential
        return eps + gen.exponential(spec.jump_mean, size)
    return _invert_tail(spec, effective_epsilon(spec, eps), size, gen)
