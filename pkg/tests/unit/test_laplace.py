"""
Unit tests for Laplace exponents, Lévy tails and small-jump integrals.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from src.core.error_models import DomainError
from src.model.families import (
    CompoundPoissonSpec,
    DriftOnlySpec,
    GammaSpec,
    InverseGaussianSpec,
    StableSpec,
    TruncatedGeneralSpec,
)
from src.model.laplace import (
    detect_infinite_activity,
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

SPECS = [
    DriftOnlySpec(drift=2.0),
    StableSpec(alpha=0.3),
    StableSpec(alpha=0.5, drift=0.5),
    StableSpec(alpha=0.8, scale=2.0),
    GammaSpec(a=1.0, b=1.0),
    GammaSpec(a=2.0, b=0.5, drift=1.0),
    InverseGaussianSpec(mean=1.0, shape=1.0),
    InverseGaussianSpec(mean=2.0, shape=0.5),
    CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0, drift=1.0),
    CompoundPoissonSpec(rate=2.0, jump="exponential", jump_mean=0.5),
]


class TestClosedForms:
    """Tests for closed-form Laplace exponents."""

    def test_stable(self):
        assert eval_phi(StableSpec(alpha=0.5), 4.0) == pytest.approx(2.0)

    def test_stable_scale(self):
        assert eval_phi(StableSpec(alpha=0.5, scale=3.0), 9.0) == pytest.approx(9.0)

    def test_gamma(self):
        assert eval_phi(GammaSpec(a=1.0, b=1.0), math.e - 1.0) == pytest.approx(1.0)

    def test_inverse_gaussian(self):
        # sqrt(1 + 2λ) − 1 for mean = shape = 1
        assert eval_phi(InverseGaussianSpec(mean=1.0, shape=1.0), 4.0) == pytest.approx(2.0)

    def test_inverse_gaussian_small_lambda_precision(self):
        spec = InverseGaussianSpec(mean=1.0, shape=1.0)
        assert eval_phi(spec, 1e-12) == pytest.approx(1e-12, rel=1e-9)

    def test_compound_poisson_fixed_with_drift(self):
        spec = CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0, drift=1.0)
        assert eval_phi(spec, 2.0) == pytest.approx(2.0 + 1.0 - math.exp(-2.0))

    def test_drift_only(self):
        assert eval_phi(DriftOnlySpec(drift=1.5), 2.0) == 3.0

    def test_zero_and_negative_lambda(self):
        spec = GammaSpec(a=1.0, b=1.0)
        assert eval_phi(spec, 0.0) == 0.0
        with pytest.raises(DomainError, match="lambda >= 0"):
            eval_phi(spec, -1.0)

    def test_grid(self):
        values = eval_phi_grid(StableSpec(alpha=0.5), [1.0, 4.0, 9.0])
        assert list(values) == pytest.approx([1.0, 2.0, 3.0])


class TestQuadratureAgreement:
    """Φ rebuilt from Π̄ alone must match the closed forms."""

    @pytest.mark.parametrize("spec", SPECS[1:], ids=lambda s: s.summary())
    @pytest.mark.parametrize("lam", [0.01, 1.0, 100.0])
    def test_phi_by_quadrature(self, spec, lam):
        assert phi_by_quadrature(spec, lam) == pytest.approx(eval_phi(spec, lam), rel=1e-6)

    def test_truncated_general_matches_compound_poisson(self):
        spec = TruncatedGeneralSpec(
            tail_ref="src.model.tails:exponential_jumps",
            tail_params={"rate": 2.0, "mean": 0.5},
            truncation=1e-9,
        )
        reference = CompoundPoissonSpec(rate=2.0, jump="exponential", jump_mean=0.5)
        assert eval_phi(spec, 2.0) == pytest.approx(eval_phi(reference, 2.0), rel=1e-7)


class TestTails:
    """Tests for Π̄ and the integrals built on it."""

    def test_tail_domain(self):
        with pytest.raises(DomainError, match="x > 0"):
            eval_tail(GammaSpec(a=1.0, b=1.0), 0.0)

    def test_compound_poisson_fixed_tail_steps(self):
        spec = CompoundPoissonSpec(rate=3.0, jump="fixed", jump_size=1.0)
        assert eval_tail(spec, 0.5) == 3.0
        assert eval_tail(spec, 1.0) == 0.0

    def test_inverse_gaussian_tail_by_density(self):
        spec = InverseGaussianSpec(mean=1.0, shape=1.0)
        amp, beta = math.sqrt(1.0 / (2.0 * math.pi)), 0.5
        expected, _ = integrate.quad(lambda y: amp * y ** -1.5 * math.exp(-beta * y), 0.3, math.inf)
        assert eval_tail(spec, 0.3) == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("spec", [StableSpec(alpha=0.4), GammaSpec(a=1.5, b=2.0)], ids=["stable", "gamma"])
    def test_tail_integral_closed_form(self, spec):
        expected, _ = integrate.quad(lambda x: eval_tail(spec, x), 0.1, 2.0)
        assert tail_integral(spec, 0.1, 2.0) == pytest.approx(expected, rel=1e-8)

    def test_tail_integral_domain(self):
        with pytest.raises(DomainError):
            tail_integral(GammaSpec(a=1.0, b=1.0), 1.0, 0.5)

    @pytest.mark.parametrize("spec", SPECS[1:8], ids=lambda s: s.summary())
    def test_small_jump_mean_by_parts(self, spec):
        eps = 0.05
        by_parts = tail_integral(spec, 0.0, eps) - eps * eval_tail(spec, eps)
        assert small_jump_mean(spec, eps) == pytest.approx(by_parts, rel=1e-6)

    def test_small_jump_mean_fixed_jump(self):
        spec = CompoundPoissonSpec(rate=2.0, jump="fixed", jump_size=1.0)
        assert small_jump_mean(spec, 0.5) == 0.0
        assert small_jump_mean(spec, 1.0) == 2.0

    def test_levy_tail_cutoff(self, tempered_spec):
        handle = levy_tail(tempered_spec)
        assert handle.cutoff == tempered_spec.truncation
        assert handle(0.5) == pytest.approx(eval_tail(tempered_spec, 0.5))


class TestActivity:
    """Tests for finite/infinite activity classification."""

    @pytest.mark.parametrize("spec,expected", [
        (StableSpec(alpha=0.5), True),
        (GammaSpec(a=1.0, b=1.0), True),
        (InverseGaussianSpec(mean=1.0, shape=1.0), True),
        (DriftOnlySpec(drift=1.0), False),
        (CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0, drift=1.0), False),
    ])
    def test_known_families(self, spec, expected):
        assert has_infinite_activity(spec) is expected

    def test_detects_unbounded_tail(self, tempered_spec):
        assert detect_infinite_activity(tempered_spec) is True

    def test_detects_bounded_tail(self):
        spec = TruncatedGeneralSpec(
            tail_ref="src.model.tails:exponential_jumps", tail_params={"rate": 2.0, "mean": 0.5}, truncation=1e-9
        )
        assert detect_infinite_activity(spec) is False

    def test_declared_activity_wins(self):
        spec = TruncatedGeneralSpec(
            tail_ref="src.model.tails:exponential_jumps", truncation=1e-9, infinite_activity=True
        )
        assert has_infinite_activity(spec) is True


class TestRegularVariation:
    """Tests for regular-variation data at infinity."""

    def test_stable_label(self):
        rv = regular_variation(StableSpec(alpha=0.5))
        assert rv.index == 0.5
        assert rv.exact
        assert "index α = 0.5" in rv.label

    def test_gamma_slowly_varying(self):
        rv = regular_variation(GammaSpec(a=2.0, b=1.0))
        assert rv.index == 0.0
        assert "slowly varying L(λ)=a ln λ" in rv.label
        assert slowly_varying(GammaSpec(a=2.0, b=1.0), math.e) == pytest.approx(2.0)

    def test_drift_dominates(self):
        spec = StableSpec(alpha=0.5, drift=2.0)
        assert regular_variation(spec).index == 1.0
        assert slowly_varying(spec, 100.0) == 2.0

    def test_inverse_gaussian_constant(self):
        spec = InverseGaussianSpec(mean=1.0, shape=2.0)
        lam = 1e8
        assert eval_phi(spec, lam) / math.sqrt(lam) == pytest.approx(slowly_varying(spec, lam), rel=1e-3)

    def test_no_index(self):
        spec = TruncatedGeneralSpec(tail_ref="src.model.tails:exponential_jumps", truncation=1e-9)
        assert regular_variation(spec) is None
        with pytest.raises(DomainError):
            slowly_varying(spec, 10.0)


class TestPhiShape:
    """Property tests: Φ is increasing and concave with Φ(λ)/λ non-increasing."""

    @settings(max_examples=60, deadline=None)
    @given(
        spec=st.sampled_from(SPECS),
        lo=st.floats(min_value=1e-3, max_value=1e3),
        factor=st.floats(min_value=1.01, max_value=100.0),
    )
    def test_increasing_and_sublinear(self, spec, lo, factor):
        hi = lo * factor
        p_lo, p_hi = eval_phi(spec, lo), eval_phi(spec, hi)
        assert p_hi >= p_lo
        assert p_hi / hi <= p_lo / lo * (1.0 + 1e-12)

    @settings(max_examples=60, deadline=None)
    @given(
        spec=st.sampled_from(SPECS),
        lam=st.floats(min_value=1e-2, max_value=1e3),
        h=st.floats(min_value=1e-3, max_value=1.0),
    )
    def test_midpoint_concavity(self, spec, lam, h):
        step = h * lam
        mid = eval_phi(spec, lam)
        assert mid >= 0.5 * (eval_phi(spec, lam - step * 0.5) + eval_phi(spec, lam + step * 0.5)) - 1e-12 * (1 + mid)
