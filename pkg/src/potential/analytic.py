"""
Deterministic routes to U(δ): regular-variation asymptotics, quadrature of
the marginal law, the two-sided band, and the best-available selector.
"""

import math
from typing import Callable, Optional, Tuple, Union

from scipy import integrate, special, stats

from src.core.error_models import DomainError, PreconditionError
from src.core.logging import get_logger
from src.model.families import (
    DriftOnlySpec,
    GammaSpec,
    InverseGaussianSpec,
    StableSpec,
    SubordinatorSpec,
)
from src.model.laplace import eval_phi, has_infinite_activity, regular_variation
from src.potential.models import PotentialEstimate, PotentialMethod
from src.potential.monte_carlo import potential_mc
from src.potential.series import potential_series
from src.simulate.passage import EventsEngine, SkeletonEngine
from src.simulate.rng import RngLike

logger = get_logger(__name__)

# U(δ)Φ(1/δ) lies in [LOWER_BAND, UPPER_BAND] for every subordinator
UPPER_BAND = math.e
LOWER_BAND = (1.0 - 2.0 / math.e) / (1.0 - 1.0 / math.e)


def potential_asymptotic(spec: SubordinatorSpec, delta: float) -> PotentialEstimate:
    """
    U(δ) ≈ 1 / (Γ(1+α) Φ(1/δ)) from the regular-variation index α of Φ.

    Exact for pure stable and drift-only specs; for the gamma family the
    estimate carries a slow-convergence flag.

    Raises:
        PreconditionError: If the spec has no known index
    """
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    rv = regular_variation(spec)
    if rv is None:
        raise PreconditionError(f"{spec.summary()} has no declared regular-variation index")
    value = 1.0 / (math.gamma(1.0 + rv.index) * eval_phi(spec, 1.0 / delta))
    flags = [rv.slowly_varying_note] if rv.slowly_varying_note and not rv.exact else []
    return PotentialEstimate(
        delta=delta,
        value=value,
        method=PotentialMethod.ASYMPTOTIC,
        exact=rv.exact,
        flags=flags,
    )


def quadrature_supported(spec: SubordinatorSpec) -> bool:
    """Whether P(X_t ≤ y) has a closed form usable by potential_quadrature."""
    if isinstance(spec, (DriftOnlySpec, GammaSpec, InverseGaussianSpec)):
        return True
    return isinstance(spec, StableSpec) and spec.alpha == 0.5


def _marginal_cdf(spec: SubordinatorSpec) -> Callable[[float, float], float]:
    """(t, y) ↦ P(X_t ≤ y) for the Lévy part (drift removed)."""
    if isinstance(spec, GammaSpec):
        return lambda t, y: float(special.gammainc(spec.a * t, spec.b * y))
    if isinstance(spec, InverseGaussianSpec):
        return lambda t, y: float(
            stats.invgauss.cdf(y, spec.mean / (spec.shape * t), scale=spec.shape * t * t)
        )
    # X_t is Lévy-distributed with scale (scale·t)²/2
    return lambda t, y: float(stats.levy.cdf(y, scale=(spec.scale * t) ** 2 / 2.0))


def potential_quadrature(spec: SubordinatorSpec, delta: float) -> PotentialEstimate:
    """
    U(δ) = ∫₀^∞ P(X_t ≤ δ) dt from the closed-form marginal law.

    Raises:
        PreconditionError: If the family has no closed-form marginal law
    """
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if not quadrature_supported(spec):
        raise PreconditionError(f"no closed-form marginal law for {spec.summary()}")
    if isinstance(spec, DriftOnlySpec):
        return PotentialEstimate(delta=delta, value=delta / spec.drift, method=PotentialMethod.QUADRATURE, exact=True)

    cdf = _marginal_cdf(spec)
    d = spec.drift
    t_max = delta / d if d > 0 else math.inf

    def integrand(t: float) -> float:
        if t <= 0:
            return 1.0
        room = delta - d * t
        return cdf(t, room) if room > 0 else 0.0

    # the bulk of the mass sits within a few multiples of 1/Φ(1/δ)
    scale = 1.0 / eval_phi(spec, 1.0 / delta)
    split = min(scale * 4.0, t_max)
    head, err_head = integrate.quad(integrand, 0.0, split, epsabs=0.0, epsrel=1e-10, limit=400)
    tail, err_tail = (0.0, 0.0)
    if split < t_max:
        tail, err_tail = integrate.quad(integrand, split, t_max, epsabs=0.0, epsrel=1e-10, limit=400)
    return PotentialEstimate(
        delta=delta,
        value=head + tail,
        stderr=err_head + err_tail,
        method=PotentialMethod.QUADRATURE,
        exact=True,
    )


def potential_bounds(spec: SubordinatorSpec, delta: float) -> Tuple[float, float]:
    """Band [LOWER_BAND, UPPER_BAND] / Φ(1/δ) that contains U(δ)."""
    phi = eval_phi(spec, 1.0 / delta)
    return LOWER_BAND / phi, UPPER_BAND / phi


def potential_best(
    spec: SubordinatorSpec,
    delta: float,
    rng: Optional[RngLike] = None,
    replicas: int = 10_000,
    engine: Optional[Union[EventsEngine, SkeletonEngine]] = None,
) -> PotentialEstimate:
    """
    Most accurate available U(δ).

    Order: series (positive drift, finite activity), exact asymptotic (pure
    stable), quadrature of the marginal law, then Monte Carlo (needs ``rng``).
    """
    if spec.drift > 0 and not has_infinite_activity(spec):
        return potential_series(spec, [delta])[0]
    rv = regular_variation(spec)
    if rv is not None and rv.exact:
        return potential_asymptotic(spec, delta)
    if quadrature_supported(spec):
        return potential_quadrature(spec, delta)
    if rng is None:
        raise PreconditionError(f"no deterministic U(δ) route for {spec.summary()}; a random stream is required")
    return potential_mc(spec, delta, replicas, engine, rng)


def deterministic_available(spec: SubordinatorSpec) -> bool:
    """Whether potential_best can answer without simulation."""
    if spec.drift > 0 and not has_infinite_activity(spec):
        return True
    rv = regular_variation(spec)
    return (rv is not None and rv.exact) or quadrature_supported(spec)
