"""
Unit tests for greedy covering counts and the splitting defect.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from src.core.error_models import DomainError, EligibilityError, PreconditionError
from src.covering.counting import (
    count_covering_path,
    count_covering_path_multi,
    count_covering_renewal,
    random_splits,
    splitting_defect,
)
from src.covering.models import CountMethod, CoveringCount
from src.model.families import StableSpec
from src.simulate.passage import EventsEngine
from src.simulate.paths import EventList, Skeleton, simulate_events
from src.simulate.rng import RngStream


def drift_path(drift: float = 1.0, horizon: float = 1.0) -> EventList:
    return EventList(times=np.empty(0), jumps=np.empty(0), drift=drift, horizon=horizon)


class TestCoveringCountModel:
    """Tests for CoveringCount validation."""

    def test_literal_must_be_n_or_n_plus_one(self):
        with pytest.raises(ValidationError, match="literal"):
            CoveringCount(
                n=1, literal=3, renewal_times=np.array([0.5]), method=CountMethod.RENEWAL, horizon=1.0, delta=0.1
            )

    def test_times_match_count(self):
        with pytest.raises(ValidationError, match="renewal times"):
            CoveringCount(n=2, literal=2, renewal_times=np.array([0.5]), method="renewal", horizon=1.0, delta=0.1)

    def test_record(self):
        count = CoveringCount(
            n=1, literal=2, renewal_times=np.array([0.4]), method="renewal", horizon=1.0, delta=0.5
        )
        assert count.as_record() == {
            "delta": 0.5, "t": 1.0, "method": "renewal", "n": 1, "literal": 2, "max_renewal_time": 0.4,
        }


class TestPathCounting:
    """Tests for counting on a single path."""

    def test_drift_only_exact(self):
        count = count_covering_path(drift_path(), 1.0, 0.1)
        assert count.n == 10
        assert count.literal == 10
        assert count.renewal_times[-1] == 1.0
        assert count.method == CountMethod.PATH_EVENTS

    def test_zero_path_needs_one_interval(self):
        path = EventList(times=np.empty(0), jumps=np.empty(0), drift=0.0, horizon=1.0)
        count = count_covering_path(path, 1.0, 0.1)
        assert count.n == 0
        assert count.literal == 1

    def test_jumps_and_drift(self):
        # level: drift 1 until 0.25, jump of 1 at 0.25, drift again
        path = EventList(times=np.array([0.25]), jumps=np.array([1.0]), drift=1.0, horizon=1.0)
        count = count_covering_path(path, 1.0, 0.2)
        # drift crossings at 0.2, the jump at 0.25 re-anchors at 1.25, then 0.45, 0.65, 0.85
        assert count.renewal_times.tolist() == pytest.approx([0.2, 0.25, 0.45, 0.65, 0.85])
        assert count.literal == 6

    def test_small_jumps_do_not_reanchor(self):
        path = EventList(times=np.array([0.1, 0.2]), jumps=np.array([0.3, 0.3]), drift=0.0, horizon=1.0)
        count = count_covering_path(path, 1.0, 0.5)
        # 0.3 stays inside [0, 0.5]; 0.6 leaves it
        assert count.renewal_times.tolist() == [0.2]

    def test_giant_jump_then_small_steps(self):
        # 1e12 + 1e-5 is not representable, so levels must be taken relative to the jump
        path = EventList(times=np.array([0.1, 0.5]), jumps=np.array([1e12, 1.0]), drift=1e-6, horizon=1.0)
        count = count_covering_path(path, 1.0, 1e-5)
        assert count.n == 2
        assert count.renewal_times.tolist() == [0.1, 0.5]

    def test_drift_crossing_after_giant_jump(self):
        path = EventList(times=np.array([0.1]), jumps=np.array([1e12]), drift=1.0, horizon=1.0)
        count = count_covering_path(path, 1.0, 0.2)
        assert count.renewal_times.tolist() == pytest.approx([0.1, 0.3, 0.5, 0.7, 0.9])
        assert np.all(np.diff(count.renewal_times) > 0)

    def test_renewals_strictly_increasing_on_heavy_paths(self):
        spec = StableSpec(alpha=0.3)
        path = simulate_events(spec, 1.0, 1e-8, True, RngStream(17))
        for delta in (1e-3, 3.16e-5, 1e-5):
            count = count_covering_path(path, 1.0, delta)
            assert np.all(np.diff(count.renewal_times) > 0)

    def test_skeleton_counts_at_grid_times(self):
        path = Skeleton(step=0.25, values=np.array([0.0, 0.2, 0.4, 0.6, 0.8]), horizon=1.0)
        count = count_covering_path(path, 1.0, 0.3)
        assert count.renewal_times.tolist() == [0.5, 1.0]
        assert count.method == CountMethod.PATH_SKELETON

    def test_multi_is_nested(self, stable_spec):
        path = simulate_events(stable_spec, 1.0, 1e-5, True, RngStream(4))
        counts = count_covering_path_multi(path, 1.0, [1e-1, 1e-2, 1e-3])
        assert [c.literal for c in counts] == sorted(c.literal for c in counts)

    def test_horizon_checked(self):
        with pytest.raises(DomainError, match="horizon"):
            count_covering_path(drift_path(horizon=1.0), 2.0, 0.1)

    def test_delta_checked(self):
        with pytest.raises(DomainError):
            count_covering_path(drift_path(), 1.0, 0.0)


class TestRenewalCounting:
    """Tests for counting from i.i.d. passage times."""

    def test_drift_only_exact(self, drift_spec):
        count = count_covering_renewal(drift_spec, 1.0, 0.1, EventsEngine(), RngStream(1))
        assert count.n == 10
        assert count.literal == 10
        assert count.method == CountMethod.RENEWAL

    def test_ineligible(self, cp_no_drift_spec):
        with pytest.raises(EligibilityError):
            count_covering_renewal(cp_no_drift_spec, 1.0, 0.5, EventsEngine(), RngStream(1))

    def test_reproducible(self, gamma_spec):
        a = count_covering_renewal(gamma_spec, 1.0, 0.05, EventsEngine(), RngStream(6))
        b = count_covering_renewal(gamma_spec, 1.0, 0.05, EventsEngine(), RngStream(6))
        assert a.n == b.n
        assert np.array_equal(a.renewal_times, b.renewal_times)


class TestSplittingDefect:
    """Tests for the splitting defect A."""

    def test_no_splits(self):
        assert splitting_defect(drift_path(), 1.0, [], 0.1) == 0

    def test_split_on_renewal(self):
        assert splitting_defect(drift_path(), 1.0, [0.1], 0.1) == 0

    def test_split_between_renewals(self):
        assert splitting_defect(drift_path(), 1.0, [0.55], 0.1) == -1

    def test_invalid_splits(self):
        with pytest.raises(DomainError, match="split points"):
            splitting_defect(drift_path(), 1.0, [0.6, 0.3], 0.1)
        with pytest.raises(DomainError, match="split points"):
            splitting_defect(drift_path(), 1.0, [1.0], 0.1)

    def test_random_splits(self):
        splits = random_splits(2.0, 4, RngStream(1))
        assert len(splits) == 3
        assert splits == sorted(splits)
        assert all(0.0 < s < 2.0 for s in splits)

    def test_random_splits_needs_a_piece(self):
        with pytest.raises(PreconditionError):
            random_splits(1.0, 0, RngStream(1))

    @settings(max_examples=150, deadline=None)
    @given(
        jumps=st.lists(st.floats(min_value=1e-3, max_value=2.0), min_size=0, max_size=25),
        seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
        delta=st.floats(min_value=0.01, max_value=1.5),
        pieces=st.integers(min_value=2, max_value=8),
    )
    def test_defect_bounds_on_jump_paths(self, jumps, seed, delta, pieces):
        """−(j−1) ≤ A ≤ 0 for j pieces."""
        gen = np.random.default_rng(seed)
        times = np.sort(gen.uniform(0.0, 1.0, len(jumps)))
        path = EventList(times=times, jumps=np.array(jumps, dtype=float), drift=0.0, horizon=1.0)
        splits = random_splits(1.0, pieces, gen)
        if len(set(splits)) < len(splits):
            return
        defect = splitting_defect(path, 1.0, splits, delta)
        assert -(pieces - 1) <= defect <= 0
