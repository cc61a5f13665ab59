"""
Unit tests for the potential routes: Monte Carlo, series, asymptotics,
quadrature, bounds and geometric grids.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.error_models import DomainError, EligibilityError, PreconditionError
from src.model.families import CompoundPoissonSpec, StableSpec
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
from src.potential.models import DeltaGrid, PotentialEstimate, PotentialMethod
from src.potential.monte_carlo import potential_mc, potential_q_two_ways
from src.potential.series import potential_series
from src.simulate.rng import RngStream


def cp_drift_potential(x: float) -> float:
    """U(x) = 1 − e^{−x} for unit jumps at rate 1 with unit drift, x < 1."""
    return 1.0 - math.exp(-x)


class TestPotentialModels:

    def test_value_must_be_positive(self):
        with pytest.raises(ValidationError):
            PotentialEstimate(delta=0.1, value=0.0, method=PotentialMethod.SERIES)

    def test_row(self):
        estimate = PotentialEstimate(delta=0.1, value=0.2, method="series", flags=["a", "b"])
        row = estimate.as_row()
        assert row["method"] == "series"
        assert row["flags"] == "a; b"
        assert estimate.flagged

    def test_grid_levels_strictly_decreasing(self):
        with pytest.raises(ValidationError, match="strictly decreasing"):
            DeltaGrid(ratio=0.5, levels=[0.1, 0.2], targets=[0.5, 0.25], values=[0.5, 0.25], method="best")

    def test_grid_values_within_tolerance(self):
        with pytest.raises(ValidationError, match="misses target"):
            DeltaGrid(ratio=0.5, levels=[0.5], targets=[0.5], values=[0.6], method="best")


class TestMonteCarlo:
    """Tests for U(δ) = E T₁(δ)."""

    def test_drift_only_is_exact(self, drift_spec, stream):
        estimate = potential_mc(drift_spec, 0.1, 10, rng=stream)
        assert estimate.value == pytest.approx(0.1, rel=1e-15)
        assert estimate.stderr == 0.0
        assert estimate.exact
        assert estimate.engine == "events(exact)"

    @pytest.mark.statistical
    def test_compound_poisson_with_drift(self, cp_drift_spec, stream):
        """Test T₁(0.5) = min(0.5, first jump time) in mean."""
        estimate = potential_mc(cp_drift_spec, 0.5, 4000, rng=stream)
        assert estimate.stderr > 0
        assert abs(estimate.value - cp_drift_potential(0.5)) <= 5 * estimate.stderr

    def test_reproducible(self, cp_drift_spec):
        a = potential_mc(cp_drift_spec, 0.5, 100, rng=RngStream(7))
        b = potential_mc(cp_drift_spec, 0.5, 100, rng=RngStream(7))
        assert a == b

    def test_needs_two_replicas(self, drift_spec, stream):
        with pytest.raises(PreconditionError, match="at least 2"):
            potential_mc(drift_spec, 0.1, 1, rng=stream)

    def test_needs_stream(self, drift_spec):
        with pytest.raises(PreconditionError, match="random stream"):
            potential_mc(drift_spec, 0.1, 10)

    def test_ineligible(self, cp_no_drift_spec, stream):
        with pytest.raises(EligibilityError):
            potential_mc(cp_no_drift_spec, 0.5, 10, rng=stream)


class TestSeries:
    """Tests for the alternating convolution series."""

    def test_drift_only(self, drift_spec):
        (estimate,) = potential_series(drift_spec, [0.1])
        assert estimate.value == pytest.approx(0.1, rel=1e-12)
        assert estimate.exact
        assert estimate.stderr == 0.0

    def test_fixed_jumps_with_drift(self, cp_drift_spec):
        estimates = potential_series(cp_drift_spec, [0.2, 0.5])
        for estimate in estimates:
            assert estimate.value == pytest.approx(cp_drift_potential(estimate.delta), abs=1e-6)
            assert estimate.method == PotentialMethod.SERIES
            assert not estimate.flags

    @pytest.mark.statistical
    def test_exponential_jumps_match_monte_carlo(self, stream):
        spec = CompoundPoissonSpec(rate=2.0, jump="exponential", jump_mean=0.5, drift=1.0)
        (series,) = potential_series(spec, [0.5])
        mc = potential_mc(spec, 0.5, 4000, rng=stream)
        assert abs(series.value - mc.value) <= 5 * mc.stderr + 1e-4

    def test_needs_drift(self, stable_spec):
        with pytest.raises(PreconditionError, match="drift"):
            potential_series(stable_spec, [0.1])

    def test_positive_deltas(self, drift_spec):
        with pytest.raises(DomainError):
            potential_series(drift_spec, [0.1, 0.0])


class TestAnalytic:
    """Tests for asymptotics, quadrature and the band."""

    def test_band_constants(self):
        assert UPPER_BAND == math.e
        assert LOWER_BAND == pytest.approx(0.41802, abs=1e-5)

    def test_stable_asymptotic_is_exact(self, stable_spec):
        estimate = potential_asymptotic(stable_spec, 0.01)
        assert estimate.value == pytest.approx(math.sqrt(0.01) / math.gamma(1.5), rel=1e-12)
        assert estimate.exact
        assert not estimate.flags

    def test_gamma_asymptotic_flagged(self, gamma_spec):
        estimate = potential_asymptotic(gamma_spec, 1e-3)
        assert not estimate.exact
        assert estimate.flags == ["slowly-varying, slow convergence"]

    def test_asymptotic_needs_index(self, cp_no_drift_spec):
        with pytest.raises(PreconditionError, match="regular-variation"):
            potential_asymptotic(cp_no_drift_spec, 0.1)

    def test_quadrature_drift(self, drift_spec):
        estimate = potential_quadrature(drift_spec, 0.3)
        assert estimate.value == 0.3
        assert estimate.exact

    def test_quadrature_matches_stable_closed_form(self, stable_spec):
        estimate = potential_quadrature(stable_spec, 0.01)
        assert estimate.value == pytest.approx(math.sqrt(0.01) / math.gamma(1.5), rel=1e-5)

    @pytest.mark.parametrize("fixture", ["gamma_spec", "ig_spec", "stable_spec"])
    def test_quadrature_within_band(self, fixture, request):
        spec = request.getfixturevalue(fixture)
        for delta in (1e-3, 1e-1, 1.0):
            lower, upper = potential_bounds(spec, delta)
            assert lower <= potential_quadrature(spec, delta).value <= upper

    def test_quadrature_support(self, stable_spec, tempered_spec, cp_drift_spec):
        assert quadrature_supported(stable_spec)
        assert not quadrature_supported(StableSpec(alpha=0.3))
        assert not quadrature_supported(tempered_spec)
        assert not quadrature_supported(cp_drift_spec)
        with pytest.raises(PreconditionError, match="closed-form"):
            potential_quadrature(tempered_spec, 0.1)

    def test_bounds_drift(self, drift_spec):
        lower, upper = potential_bounds(drift_spec, 0.1)
        assert lower == pytest.approx(LOWER_BAND * 0.1)
        assert upper == pytest.approx(math.e * 0.1)


class TestPotentialBest:
    """Tests for the best-available selector."""

    def test_order(self, cp_drift_spec, stable_spec, gamma_spec, ig_spec):
        assert potential_best(cp_drift_spec, 0.5).method == PotentialMethod.SERIES
        assert potential_best(stable_spec, 0.01).method == PotentialMethod.ASYMPTOTIC
        assert potential_best(gamma_spec, 0.01).method == PotentialMethod.QUADRATURE
        assert potential_best(ig_spec, 0.01).method == PotentialMethod.QUADRATURE

    def test_monte_carlo_needs_stream(self, tempered_spec):
        assert not deterministic_available(tempered_spec)
        with pytest.raises(PreconditionError, match="random stream"):
            potential_best(tempered_spec, 0.1)

    def test_monte_carlo_fallback(self, tempered_spec, stream):
        estimate = potential_best(tempered_spec, 0.1, rng=stream, replicas=200)
        assert estimate.method == PotentialMethod.MONTE_CARLO
        assert estimate.replicas == 200


class TestDeltaGrid:
    """Tests for solving U(δ_j) = r^j."""

    def test_drift_halving(self, drift_spec):
        grid = solve_delta_grid(drift_spec, 0.5, 3)
        assert grid.levels == pytest.approx([0.5, 0.25, 0.125], rel=1e-3)
        assert grid.targets == pytest.approx([0.5, 0.25, 0.125])
        assert len(grid) == 3
        assert not grid.warnings

    def test_stable_levels(self, stable_spec):
        grid = solve_delta_grid(stable_spec, 0.5, 2, method="asymptotic")
        expected = [(0.5 ** j * math.gamma(1.5)) ** 2 for j in (1, 2)]
        assert grid.levels == pytest.approx(expected, rel=3e-3)

    @pytest.mark.parametrize("r,j_max", [(1.0, 2), (0.0, 2), (0.5, 0)])
    def test_invalid_arguments(self, drift_spec, r, j_max):
        with pytest.raises(DomainError):
            solve_delta_grid(drift_spec, r, j_max)

    def test_unknown_method(self, drift_spec):
        with pytest.raises(PreconditionError, match="unknown"):
            potential_evaluator(drift_spec, "monte-carlo")

    def test_best_needs_deterministic_route(self, tempered_spec):
        with pytest.raises(PreconditionError):
            solve_delta_grid(tempered_spec, 0.5, 2)


class TestQPotential:
    """Tests for the two U_q pipelines."""

    def test_q_must_be_positive(self, drift_spec, stream):
        with pytest.raises(DomainError, match="q > 0"):
            potential_q_two_ways(drift_spec, 0.1, 0.0, 10, stream)

    def test_drift_only(self, drift_spec, stream):
        """Test both pipelines against (1 − e^{−qδ}) / q."""
        a, b = potential_q_two_ways(drift_spec, 0.1, 1.0, 4, stream)
        expected = 1.0 - math.exp(-0.1)
        assert b.value == pytest.approx(expected, rel=1e-12)
        assert b.method == PotentialMethod.Q_IDENTITY
        assert a.method == PotentialMethod.SKELETON_INTEGRAL
        assert abs(a.value - expected) <= 3 * a.grid_step

    @pytest.mark.statistical
    @pytest.mark.slow
    def test_gamma_pipelines_agree(self, gamma_spec, stream):
        a, b = potential_q_two_ways(gamma_spec, 0.1, 1.0, 500, stream)
        assert abs(a.value - b.value) <= 5 * float(np.hypot(a.stderr, b.stderr)) + 2 * a.grid_step
