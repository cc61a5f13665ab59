"""
Acceptance runs, some at reduced replica counts.

Slow: deselect with ``-m "not slow"``. Seeds are fixed, so a failure means
an estimate moved, not an unlucky draw.
"""

import json
import math

import pytest

from src.cli.__main__ import main
from src.model.families import CompoundPoissonSpec, GammaSpec, InverseGaussianSpec, StableSpec
from src.potential.analytic import potential_quadrature
from src.potential.monte_carlo import potential_mc
from src.potential.series import potential_series
from src.simulate.passage import EventsEngine
from src.simulate.rng import RngStream
from src.verify.indices import run_indices
from src.verify.lemmas import run_lemma3, run_lemma4, run_lemma5
from src.verify.potential_checks import run_potential_table, run_q_identity
from src.verify.theorem import run_cor2, run_theorem1

pytestmark = [pytest.mark.integration, pytest.mark.slow]

FIVE_DECADES = [1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5]


def verdict(report, criterion):
    (found,) = [v for v in report.verdicts if v.criterion == criterion]
    return found


@pytest.mark.statistical
def test_first_passage_closed_form(cp_drift_spec):
    """Test U(0.5) = 1 − e^{−0.5} for unit jumps at rate 1 with unit drift, by Monte Carlo and by series."""
    expected = 1.0 - math.exp(-0.5)
    mc = potential_mc(cp_drift_spec, 0.5, 100_000, rng=RngStream(11))
    assert abs(mc.value - expected) <= 3 * mc.stderr
    (series,) = potential_series(cp_drift_spec, [0.5])
    assert series.value == pytest.approx(expected, abs=1e-6)


@pytest.mark.statistical
def test_stable_mean_converges(stable_spec):
    report = run_theorem1(stable_spec, 1.0, [1e-2, 1e-3, 1e-4], 1000, rng=RngStream(20240607), tolerance=0.05)
    assert verdict(report, "mean_within_tolerance_at_smallest_delta").passed


@pytest.mark.parametrize("spec", [StableSpec(alpha=0.5), GammaSpec(a=1.0, b=1.0)], ids=["stable", "gamma"])
def test_potential_band(spec):
    """Test 0.418 ≤ U(δ)Φ(1/δ) ≤ e over five decades with the best available U."""
    report = run_potential_table(spec, FIVE_DECADES, replicas=2000, rng=RngStream(3))
    assert verdict(report, "potential_band").passed


@pytest.mark.statistical
def test_q_identity_gamma():
    report = run_q_identity(GammaSpec(a=1.0, b=1.0), 0.1, [0.5, 1.0, 2.0], 10_000, rng=RngStream(5))
    for q in (0.5, 1.0, 2.0):
        assert verdict(report, f"pipelines_agree_q_{q:g}").passed


def test_splitting_defect_compound_poisson(cp_drift_spec):
    """Test −j < A ≤ 0 on every one of 1000 paths for j in 2, 4, 8."""
    report = run_lemma3(cp_drift_spec, 1.0, [0.1], 1000, pieces=[2, 4, 8], rng=RngStream(9))
    assert verdict(report, "splitting_defect_in_bounds").passed


def test_tail_bound_compound_poisson():
    spec = CompoundPoissonSpec(rate=1.0, jump="fixed", jump_size=1.0, drift=1.0)
    report = run_lemma4(spec, 1.0, 0.5, 100_000, rng=RngStream(13))
    assert verdict(report, "tail_bound_holds").passed


@pytest.mark.statistical
def test_gamma_log_rate_convergence():
    """Test N/(a ln(1/δ)) → 1 for Gamma(1, 1), within 0.15 at δ = 1e-6."""
    report = run_cor2(GammaSpec(a=1.0, b=1.0), 1.0, [1e-2, 1e-4, 1e-6], 300, rng=RngStream(21), tolerance=0.15)
    assert verdict(report, "mean_within_tolerance_at_smallest_delta").passed
    assert verdict(report, "distance_to_limit_non_increasing").passed


@pytest.mark.statistical
@pytest.mark.parametrize("alpha, deltas", [
    (0.3, [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]),
    (0.5, [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]),
    (0.7, [1e-1, 1e-2, 1e-3, 1e-4]),
])
def test_stable_index_slopes(alpha, deltas):
    """Test the slope of ln N against ln(1/δ) lies within 0.05 of α over at least 3 decades."""
    report = run_indices(StableSpec(alpha=alpha), 1.0, deltas, 200, rng=RngStream(23), tolerance=0.05)
    assert verdict(report, "slope_matches_index").passed


def test_tail_bound_stable():
    report = run_lemma4(StableSpec(alpha=0.5), 1.0, 1e-2, 10_000, rng=RngStream(29))
    assert verdict(report, "tail_bound_holds").passed


@pytest.mark.statistical
@pytest.mark.parametrize("spec", [StableSpec(alpha=0.5), GammaSpec(a=1.0, b=1.0)], ids=["stable", "gamma"])
def test_variance_scaling_bounded(spec):
    """Test Var(N)·U²/t² shows no increasing trend over three decades of δ."""
    report = run_lemma5(spec, 1.0, [1e-1, 1e-2, 1e-3, 1e-4], 500, rng=RngStream(37), potential_replicas=5000)
    assert verdict(report, "variance_ratio_bounded").passed


@pytest.mark.statistical
@pytest.mark.parametrize("spec, delta", [
    (GammaSpec(a=1.0, b=1.0), 0.5),
    (InverseGaussianSpec(mean=1.0, shape=1.0), 1.0),
], ids=["gamma", "ig"])
def test_events_engine_matches_quadrature(spec, delta):
    """Test the events-engine U(δ) against quadrature of the exact marginal law."""
    mc = potential_mc(spec, delta, 40_000, engine=EventsEngine(epsilon_ratio=1e-4), rng=RngStream(41))
    exact = potential_quadrature(spec, delta)
    assert abs(mc.value - exact.value) <= 4 * mc.stderr + 1e-6


@pytest.mark.statistical
def test_shipped_potential_grid_agrees(configs_dir, tmp_path, capsys):
    """Test that the shipped geometric-grid run passes every verdict."""
    out = tmp_path / "run"
    code = main(["run", "--config", str(configs_dir / "runs" / "potential_grid.json5"), "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    verdicts = json.loads((out / "report.json").read_text())["verdicts"]
    assert {v["criterion"]: v["passed"] for v in verdicts} == {"potential_band": True, "methods_agree": True}
