"""
Laplace exponents, Lévy tails and the small-jump integrals of every family.

All functions here are pure and take an immutable spec, so they are safe to
call from any thread or worker process.
"""

import math
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, special

from src.core.error_models import DomainError
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

# quad settings shared by every numerical transform
_QUAD_OPTS = {"epsabs": 0.0, "epsrel": 1e-11, "limit": 400}


def _ig_constants(spec: InverseGaussianSpec) -> tuple:
    """Prefactor A and exponential rate β of the IG Lévy density A x^{-3/2} e^{-βx}."""
    amp = math.sqrt(spec.shape / (2.0 * math.pi))
    beta = spec.shape / (2.0 * spec.mean ** 2)
    return amp, beta


def eval_phi(spec: SubordinatorSpec, lam: float) -> float:
    """
    Evaluate the Laplace exponent Φ(λ) = dλ + ∫(1 − e^{−λy}) Π(dy).

    Args:
        spec: Subordinator specification
        lam: Argument λ ≥ 0

    Returns:
        Φ(λ), with Φ(0) = 0

    Raises:
        DomainError: If λ is negative or not finite

    Example:
        >>> eval_phi(StableSpec(alpha=0.5), 4.0)
        2.0
    """
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise DomainError(f"Laplace exponent needs lambda >= 0, got {lam}")
    if lam == 0.0:
        return 0.0

    linear = spec.drift * lam
    if isinstance(spec, DriftOnlySpec):
        return linear
    if isinstance(spec, StableSpec):
        return linear + spec.scale * lam ** spec.alpha
    if isinstance(spec, GammaSpec):
        return linear + spec.a * math.log1p(lam / spec.b)
    if isinstance(spec, InverseGaussianSpec):
        ratio = 2.0 * spec.mean ** 2 * lam / spec.shape
        # sqrt(1+r) - 1 written as r / (sqrt(1+r) + 1) to keep precision for small r
        return linear + (spec.shape / spec.mean) * ratio / (math.sqrt(1.0 + ratio) + 1.0)
    if isinstance(spec, CompoundPoissonSpec):
        if spec.jump == JumpLaw.FIXED:
            return linear - spec.rate * math.expm1(-lam * spec.jump_size)
        return linear + spec.rate * lam * spec.jump_mean / (1.0 + lam * spec.jump_mean)
    return linear + lam * tail_laplace_transform(spec, lam)


def eval_phi_grid(spec: SubordinatorSpec, lams) -> np.ndarray:
    """Φ evaluated at every point of a grid."""
    return np.array([eval_phi(spec, float(v)) for v in np.asarray(lams, dtype=float)])


def eval_tail(spec: SubordinatorSpec, x: float) -> float:
    """
    Evaluate the Lévy tail Π̄(x) = Π(x, ∞).

    Raises:
        DomainError: If x ≤ 0
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"Levy tail needs x > 0, got {x}")

    if isinstance(spec, DriftOnlySpec):
        return 0.0
    if isinstance(spec, StableSpec):
        return spec.scale * x ** (-spec.alpha) / math.gamma(1.0 - spec.alpha)
    if isinstance(spec, GammaSpec):
        return spec.a * float(special.exp1(spec.b * x))
    if isinstance(spec, InverseGaussianSpec):
        amp, beta = _ig_constants(spec)
        z = math.sqrt(beta * x)
        scaled = x ** -0.5 - math.sqrt(math.pi * beta) * float(special.erfcx(z))
        return max(2.0 * amp * math.exp(-beta * x) * scaled, 0.0)
    if isinstance(spec, CompoundPoissonSpec):
        if spec.jump == JumpLaw.FIXED:
            return spec.rate if x < spec.jump_size else 0.0
        return spec.rate * math.exp(-x / spec.jump_mean)
    value = spec.tail(x)
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"caller tail returned {value} at x={x}")
    return value


class LevyTail(BaseModel):
    """Evaluation handle x ↦ Π̄(x) bound to one spec."""

    spec: SubordinatorSpec
    cutoff: float = Field(default=0.0, ge=0.0, description="Jumps below this size are never sampled")

    model_config = ConfigDict(frozen=True)

    def __call__(self, x: float) -> float:
        return eval_tail(self.spec, x)


def levy_tail(spec: SubordinatorSpec) -> LevyTail:
    cutoff = spec.truncation if isinstance(spec, TruncatedGeneralSpec) else 0.0
    return LevyTail(spec=spec, cutoff=cutoff)


def _breakpoints(spec: SubordinatorSpec) -> List[float]:
    """Points where Π̄ is discontinuous."""
    if isinstance(spec, CompoundPoissonSpec) and spec.jump == JumpLaw.FIXED:
        return [spec.jump_size]
    return []


def _integrate_weighted(spec: SubordinatorSpec, weight: Callable[[float], float], lo: float, hi: float) -> float:
    """
    ∫_lo^hi weight(x) Π̄(x) dx with a log substitution on the part near zero.

    ``hi`` may be ``math.inf``. Π̄ may blow up at 0⁺ but is integrable.
    """
    if hi <= lo:
        return 0.0

    def f(x: float) -> float:
        return weight(x) * eval_tail(spec, x)

    def f_log(u: float) -> float:
        x = math.exp(u)
        return f(x) * x if x > 0 else 0.0

    cuts = sorted({p for p in _breakpoints(spec) if lo < p < hi})
    edges = [lo] + cuts + [hi]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if a == 0.0:
            head = min(b, 1.0)
            val, _ = integrate.quad(f_log, -math.inf, math.log(head), **_QUAD_OPTS)
            total += val
            a = head
            if b <= a:
                continue
        if math.isinf(b):
            # split a finite stretch off so quad sees the bulk of the mass
            mid = max(a * 2.0, a + 1.0)
            val, _ = integrate.quad(f, a, mid, **_QUAD_OPTS)
            total += val
            val, _ = integrate.quad(f, mid, math.inf, **_QUAD_OPTS)
            total += val
        else:
            val, _ = integrate.quad(f, a, b, **_QUAD_OPTS)
            total += val
    return total


def tail_laplace_transform(spec: SubordinatorSpec, lam: float) -> float:
    """∫₀^∞ e^{−λx} Π̄(x) dx by quadrature, so that Φ(λ) = dλ + λ · (this)."""
    if lam <= 0:
        raise DomainError(f"tail transform needs lambda > 0, got {lam}")
    lo_cut = min(1.0, 1.0 / lam)
    head = _integrate_weighted(spec, lambda x: math.exp(-lam * x), 0.0, lo_cut)
    tail = _integrate_weighted(spec, lambda x: math.exp(-lam * x), lo_cut, math.inf)
    return head + tail


def phi_by_quadrature(spec: SubordinatorSpec, lam: float) -> float:
    """Φ(λ) computed from eval_tail alone; the independent check of eval_phi."""
    if lam == 0:
        return 0.0
    return spec.drift * lam + lam * tail_laplace_transform(spec, lam)


def tail_integral(spec: SubordinatorSpec, lo: float, hi: float) -> float:
    """
    ∫_lo^hi Π̄(x) dx for 0 ≤ lo ≤ hi.

    Closed forms are used where they exist; otherwise adaptive quadrature.
    """
    if lo < 0 or hi < lo:
        raise DomainError(f"tail integral needs 0 <= lo <= hi, got [{lo}, {hi}]")
    if hi == lo or isinstance(spec, DriftOnlySpec):
        return 0.0
    if isinstance(spec, StableSpec):
        c = spec.scale / ((1.0 - spec.alpha) * math.gamma(1.0 - spec.alpha))
        return c * (hi ** (1.0 - spec.alpha) - lo ** (1.0 - spec.alpha))
    if isinstance(spec, GammaSpec):
        return _gamma_tail_antiderivative(spec, hi) - _gamma_tail_antiderivative(spec, lo)
    return _integrate_weighted(spec, lambda x: 1.0, lo, hi)


def _gamma_tail_antiderivative(spec: GammaSpec, x: float) -> float:
    """F(x) = ∫₀^x a E1(b y) dy = a (x E1(bx) + (1 − e^{−bx}) / b)."""
    if x == 0:
        return 0.0
    bx = spec.b * x
    return spec.a * (x * float(special.exp1(bx)) - math.expm1(-bx) / spec.b)


def small_jump_mean(spec: SubordinatorSpec, eps: float) -> float:
    """
    ∫₀^ε x Π(dx), the drift that compensates jumps no larger than ε.

    Raises:
        DomainError: If ε is negative
    """
    if eps < 0:
        raise DomainError(f"epsilon must be >= 0, got {eps}")
    if eps == 0 or isinstance(spec, DriftOnlySpec):
        return 0.0
    if isinstance(spec, StableSpec):
        a = spec.alpha
        return spec.scale * a * eps ** (1.0 - a) / ((1.0 - a) * math.gamma(1.0 - a))
    if isinstance(spec, GammaSpec):
        return -spec.a * math.expm1(-spec.b * eps) / spec.b
    if isinstance(spec, InverseGaussianSpec):
        amp, beta = _ig_constants(spec)
        return amp * math.sqrt(math.pi / beta) * math.erf(math.sqrt(beta * eps))
    if isinstance(spec, CompoundPoissonSpec):
        if spec.jump == JumpLaw.FIXED:
            return spec.rate * spec.jump_size if spec.jump_size <= eps else 0.0
        m = spec.jump_mean
        return spec.rate * (m - (eps + m) * math.exp(-eps / m))
    # integration by parts: ∫₀^ε x Π(dx) = ∫₀^ε Π̄ − ε Π̄(ε)
    return max(tail_integral(spec, 0.0, eps) - eps * eval_tail(spec, eps), 0.0)


def has_infinite_activity(spec: SubordinatorSpec) -> bool:
    """Whether Π(0, ∞) = ∞, i.e. Π̄ is unbounded at 0⁺."""
    if isinstance(spec, (StableSpec, GammaSpec, InverseGaussianSpec)):
        return True
    if isinstance(spec, (DriftOnlySpec, CompoundPoissonSpec)):
        return False
    if spec.infinite_activity is not None:
        return spec.infinite_activity
    return detect_infinite_activity(spec)


def detect_infinite_activity(spec: SubordinatorSpec, x_min: float = 1e-12, growth: float = 1.5) -> bool:
    """
    Numerical test for an unbounded tail: Π̄ keeps growing as x → 0⁺.

    Reports infinite activity when Π̄(x_min) exceeds ``growth`` times Π̄(1e-6)
    and is still increasing over the final decade.
    """
    far = eval_tail(spec, 1e-6)
    near = eval_tail(spec, x_min * 10.0)
    nearest = eval_tail(spec, x_min)
    return nearest > growth * far and nearest > near


class RegularVariation(BaseModel):
    """Index α and slowly varying part L of Φ(λ) ~ λ^α L(λ) as λ → ∞."""

    index: float = Field(..., ge=0.0, le=1.0)
    label: str
    exact: bool = Field(default=False, description="U(δ) = 1/(Γ(1+α)Φ(1/δ)) holds exactly")
    slowly_varying_note: str = ""

    model_config = ConfigDict(frozen=True)


def regular_variation(spec: SubordinatorSpec) -> Optional[RegularVariation]:
    """
    Regular-variation data of Φ at infinity, or None when no index is known.

    A positive drift dominates every Lévy part at infinity, giving index 1.
    """
    if spec.drift > 0:
        exact = isinstance(spec, DriftOnlySpec)
        return RegularVariation(index=1.0, label=f"index 1, L(λ) = d = {spec.drift:g}", exact=exact)
    if isinstance(spec, StableSpec):
        return RegularVariation(
            index=spec.alpha, label=f"index α = {spec.alpha:g}", exact=True, slowly_varying_note="L ≡ scale"
        )
    if isinstance(spec, GammaSpec):
        return RegularVariation(
            index=0.0,
            label="index 0, slowly varying L(λ)=a ln λ",
            slowly_varying_note="slowly-varying, slow convergence",
        )
    if isinstance(spec, InverseGaussianSpec):
        return RegularVariation(index=0.5, label="index α = 0.5, L ≡ √(2λ)")
    if isinstance(spec, TruncatedGeneralSpec) and spec.index is not None:
        return RegularVariation(index=spec.index, label=f"declared index α = {spec.index:g}")
    return None


def slowly_varying(spec: SubordinatorSpec, lam: float) -> float:
    """
    Family-specific L(λ) used to normalise covering counts.

    Raises:
        DomainError: If the spec has no regular-variation index
    """
    rv = regular_variation(spec)
    if rv is None:
        raise DomainError(f"{spec.family} has no declared regular-variation index")
    if spec.drift > 0:
        return spec.drift
    if isinstance(spec, StableSpec):
        return spec.scale
    if isinstance(spec, GammaSpec):
        return spec.a * math.log(lam)
    if isinstance(spec, InverseGaussianSpec):
        return math.sqrt(2.0 * spec.shape)
    return eval_phi(spec, lam) / lam ** rv.index
