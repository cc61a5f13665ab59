"""
Unit tests for sample paths and first-passage sampling.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.config import reset_config
from src.core.error_models import DomainError, EligibilityError, PreconditionError, UnsupportedEngineError
from src.model.laplace import small_jump_mean
from src.simulate.passage import (
    EventsEngine,
    SkeletonEngine,
    sample_first_passage,
    sample_first_passages,
)
from src.simulate.paths import (
    EventList,
    Skeleton,
    grid_size,
    path_records,
    simulate_events,
    simulate_skeleton,
    write_path_csv,
)
from src.simulate.rng import RngStream


class TestEventList:
    """Tests for EventList validation and evaluation."""

    def test_value_at_is_right_continuous(self):
        path = EventList(times=np.array([0.5]), jumps=np.array([2.0]), drift=1.0, horizon=1.0)
        assert path.value_at(0.25) == 0.25
        assert path.value_at(0.5) == 2.5
        assert path.value_at(1.0) == 3.0

    def test_rejects_unsorted_times(self):
        with pytest.raises(ValidationError, match="sorted"):
            EventList(times=np.array([0.6, 0.2]), jumps=np.array([1.0, 1.0]), drift=0.0, horizon=1.0)

    def test_rejects_nonpositive_jumps(self):
        with pytest.raises(ValidationError, match="positive"):
            EventList(times=np.array([0.2]), jumps=np.array([0.0]), drift=0.0, horizon=1.0)

    def test_rejects_events_after_horizon(self):
        with pytest.raises(ValidationError, match="horizon"):
            EventList(times=np.array([1.5]), jumps=np.array([1.0]), drift=0.0, horizon=1.0)


class TestSkeleton:
    """Tests for Skeleton validation."""

    def test_must_start_at_zero(self):
        with pytest.raises(ValidationError, match="start at 0"):
            Skeleton(step=0.5, values=np.array([0.1, 0.2, 0.3]), horizon=1.0)

    def test_must_be_nondecreasing(self):
        with pytest.raises(ValidationError, match="nondecreasing"):
            Skeleton(step=0.5, values=np.array([0.0, 0.2, 0.1]), horizon=1.0)

    def test_must_reach_horizon(self):
        with pytest.raises(ValidationError, match="horizon"):
            Skeleton(step=0.25, values=np.array([0.0, 0.2, 0.3]), horizon=1.0)

    def test_grid_size_ignores_float_noise(self):
        assert grid_size(1.0, 0.1) == 10
        assert grid_size(1.0, 0.3) == 4


class TestSimulatePaths:
    """Tests for simulate_events and simulate_skeleton."""

    def test_drift_only_has_no_events(self, drift_spec):
        path = simulate_events(drift_spec, 2.0, 0.0, False, RngStream(1))
        assert path.n_events == 0
        assert path.value_at(2.0) == 2.0

    def test_compensation_adds_small_jump_mean(self, stable_spec):
        path = simulate_events(stable_spec, 0.1, 1e-3, True, RngStream(1))
        assert path.drift == pytest.approx(small_jump_mean(stable_spec, 1e-3))
        assert path.epsilon == 1e-3
        assert np.all(path.jumps > 1e-3)

    def test_epsilon_raised_to_truncation(self, tempered_spec):
        path = simulate_events(tempered_spec, 0.1, 1e-6, False, RngStream(1))
        assert path.epsilon == tempered_spec.truncation
        assert any("raised" in w for w in path.warnings)

    def test_coarse_epsilon_warning(self, gamma_spec):
        path = simulate_events(gamma_spec, 1.0, 0.05, True, RngStream(1), delta=0.1)
        assert any("coarse" in w for w in path.warnings)

    def test_event_limit(self, stable_spec, monkeypatch):
        monkeypatch.setenv("SUBCOVER_MAX_PATH_EVENTS", "100")
        reset_config()
        with pytest.raises(PreconditionError, match="exceeds the limit"):
            simulate_events(stable_spec, 1.0, 1e-8, True, RngStream(1))

    def test_infinite_activity_needs_epsilon(self, stable_spec):
        with pytest.raises(DomainError):
            simulate_events(stable_spec, 1.0, 0.0, False, RngStream(1))

    def test_skeleton_shape(self, gamma_spec):
        path = simulate_skeleton(gamma_spec, 1.0, 0.01, RngStream(4))
        assert path.values.size == 101
        assert path.values[0] == 0.0
        assert np.all(np.diff(path.values) >= 0)

    def test_skeleton_unsupported(self, tempered_spec):
        with pytest.raises(UnsupportedEngineError):
            simulate_skeleton(tempered_spec, 1.0, 0.1, RngStream(1))


class TestPathRecords:
    """Tests for path tables and CSV dumps."""

    def test_event_records_end_at_horizon(self):
        path = EventList(times=np.array([0.5]), jumps=np.array([2.0]), drift=1.0, horizon=1.0)
        records = path_records(path)
        assert records == [
            {"time": 0.5, "jump": 2.0, "value": 2.5},
            {"time": 1.0, "jump": 0.0, "value": 3.0},
        ]

    def test_skeleton_records(self):
        path = Skeleton(step=0.5, values=np.array([0.0, 1.0, 1.5]), horizon=1.0)
        assert [r["jump"] for r in path_records(path)] == [0.0, 1.0, 0.5]

    def test_write_csv(self, tmp_path):
        path = EventList(times=np.array([0.5]), jumps=np.array([2.0]), drift=1.0, horizon=1.0)
        out = write_path_csv(path, tmp_path / "paths" / "p.csv")
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines == ["time,jump,value", "0.5,2.0,2.5", "1.0,0.0,3.0"]


class TestFirstPassage:
    """Tests for first-passage sampling."""

    def test_drift_only_exact(self, drift_spec):
        sample = sample_first_passage(drift_spec, 0.1, EventsEngine(), RngStream(1))
        assert sample.time == pytest.approx(0.1)
        assert sample.overshoot == 0.0
        assert sample.engine == "events(exact)"

    def test_compound_poisson_with_drift_mean(self, cp_drift_spec):
        """T = min(δ/d, first jump time), so E T = 1 − e^{−0.5} at δ = 0.5."""
        times, overshoots = sample_first_passages(cp_drift_spec, 0.5, EventsEngine(), 40_000, RngStream(8))
        expected = 1.0 - math.exp(-0.5)
        se = times.std(ddof=1) / math.sqrt(times.size)
        assert abs(times.mean() - expected) <= 5.0 * se
        assert np.all(times <= 0.5 + 1e-12)
        # a unit jump always overshoots by 0.5 plus the drift already run
        assert np.all((overshoots == 0.0) | (overshoots >= 0.5))

    def test_skeleton_biased_upward(self, drift_spec):
        times, _ = sample_first_passages(drift_spec, 0.1, SkeletonEngine(step=0.03), 3, RngStream(1))
        # X crosses 0.1 strictly after t = 0.1, first seen on the grid at 0.12
        assert np.allclose(times, 0.12)

    def test_stable_events_vs_skeleton(self, stable_spec):
        delta = 0.1
        events, _ = sample_first_passages(stable_spec, delta, EventsEngine(), 5_000, RngStream(2))
        grid, _ = sample_first_passages(stable_spec, delta, SkeletonEngine(step=1e-3), 5_000, RngStream(3))
        se = math.hypot(events.std(ddof=1), grid.std(ddof=1)) / math.sqrt(5_000)
        assert abs(events.mean() - grid.mean()) <= 5.0 * se + 1e-3

    def test_invalid_delta(self, gamma_spec):
        with pytest.raises(DomainError):
            sample_first_passages(gamma_spec, 0.0, EventsEngine(), 1, RngStream(1))

    def test_ineligible(self, cp_no_drift_spec):
        with pytest.raises(EligibilityError):
            sample_first_passages(cp_no_drift_spec, 0.5, EventsEngine(), 1, RngStream(1))

    def test_skeleton_needs_exact_increments(self, tempered_spec):
        with pytest.raises(UnsupportedEngineError):
            sample_first_passages(tempered_spec, 0.5, SkeletonEngine(step=0.01), 1, RngStream(1))

    def test_engine_tags(self, stable_spec, cp_drift_spec):
        assert EventsEngine(epsilon_ratio=1e-3).tag(stable_spec, 0.1) == "events(eps=0.0001, compensated)"
        assert EventsEngine().tag(cp_drift_spec, 0.1) == "events(exact)"
        assert SkeletonEngine(step=0.01).tag(stable_spec, 0.1).startswith("skeleton(h=0.01")
