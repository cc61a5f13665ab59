"""
Greedy covering counts N(t, δ).

T₀ is the start of the window and T_{k+1} = inf{s ≥ T_k: X_s − X_{T_k} > δ}.
On event lists the drift crossings are solved in closed form; skeletons are
read as right-continuous step paths jumping at the grid times.
"""

import math
from typing import List, Sequence, Tuple, Union

import numpy as np

from src.core.error_models import DomainError, PreconditionError
from src.core.logging import get_logger
from src.covering.models import CountMethod, CoveringCount
from src.model.eligibility import check_eligible
from src.model.families import SubordinatorSpec
from src.model.laplace import eval_phi
from src.simulate.passage import EventsEngine, SkeletonEngine, sample_first_passages
from src.simulate.paths import EventList, Skeleton
from src.simulate.rng import RngLike, as_generator
from src.utils.numeric import compensated_cumsum

logger = get_logger(__name__)

PathLike = Union[EventList, Skeleton]


def _path_arrays(path: PathLike) -> Tuple[np.ndarray, np.ndarray, float, CountMethod]:
    """Event times, jump sizes at each event, drift and method tag."""
    if isinstance(path, EventList):
        return path.times, path.jumps, path.drift, CountMethod.PATH_EVENTS
    return path.times[1:], np.diff(path.values), 0.0, CountMethod.PATH_SKELETON


def _first_above(
    times: np.ndarray,
    jumps: np.ndarray,
    pos: int,
    last: int,
    anchor_t: float,
    drift: float,
    base: float,
    target: float,
) -> Tuple[int, float]:
    """
    First event in [pos, last) whose level above the anchor exceeds ``target``.

    Returns the event index (``last`` if none) and the jump mass of events
    pos..j-1. Partial sums start at ``pos``, in windows that double, so a
    huge earlier jump never swamps the small increments that follow it.
    """
    lo, width, offset = pos, 64, 0.0
    while lo < last:
        hi = min(last, lo + width)
        partial = offset + np.cumsum(jumps[lo:hi])
        level = drift * (times[lo:hi] - anchor_t) + base + partial
        hits = np.flatnonzero(level > target)
        if hits.size:
            k = int(hits[0])
            return lo + k, float(partial[k - 1]) if k else offset
        offset = float(partial[-1])
        lo, width = hi, 2 * width
    return last, offset


def _greedy(
    times: np.ndarray,
    jumps: np.ndarray,
    drift: float,
    start: float,
    end: float,
    delta: float,
) -> List[float]:
    """
    Renewal times of the greedy covering on the window (start, end].

    Events at exactly ``start`` count as part of the starting level. Levels
    are measured from an anchor (the start or the last jump crossing), and
    the m-th drift crossing after it sits at anchor + mδ, so pure-drift
    stretches land exactly on multiples of δ/d. ``base`` is the jump mass
    between the anchor and event ``pos``.
    """
    first = int(np.searchsorted(times, start, side="right"))
    last = int(np.searchsorted(times, end, side="right"))

    renewals: List[float] = []
    anchor_t, base, m = start, 0.0, 0
    pos = first
    while True:
        if pos == last:
            if drift <= 0:
                break
            room = int(math.ceil((end - anchor_t) * drift / delta)) + 2
            k = np.arange(m + 1, m + 1 + room, dtype=float)
            tail = anchor_t + (k * delta - base) / drift
            for u in tail[tail <= end]:
                renewals.append(_past_last(float(u), renewals))
            break

        target = (m + 1) * delta
        j, below = _first_above(times, jumps, pos, last, anchor_t, drift, base, target)

        via_drift = False
        crossing = math.inf
        if drift > 0:
            crossing = anchor_t + (target - base - below) / drift
            via_drift = j == last or crossing < times[j]
        if not via_drift:
            if j == last:
                break
            crossing = float(times[j])
        if crossing > end:
            break

        crossing = _past_last(crossing, renewals)
        if crossing > end:
            break
        renewals.append(crossing)
        if via_drift:
            m += 1
            base += below
            pos = j
        else:
            anchor_t, base, m = float(times[j]), 0.0, 0
            pos = j + 1
    return renewals


def _past_last(crossing: float, renewals: List[float]) -> float:
    """``crossing`` moved past the previous renewal when rounding put it on or before it."""
    if renewals and crossing <= renewals[-1]:
        return float(np.nextafter(renewals[-1], math.inf))
    return crossing


def _literal(renewals: Sequence[float], start: float, end: float) -> int:
    last = renewals[-1] if renewals else start
    return len(renewals) + (1 if last < end else 0)


def _check_window(path: PathLike, t: float, delta: float) -> None:
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    if t > path.horizon * (1 + 1e-12):
        raise DomainError(f"t={t} exceeds the path horizon {path.horizon}")


def count_covering_path(path: PathLike, t: float, delta: float) -> CoveringCount:
    """
    Greedy covering count read off one path.

    Args:
        path: EventList or Skeleton
        t: Horizon of the covering, t ≤ path horizon
        delta: Interval length δ > 0

    Returns:
        CoveringCount with renewal count, literal count and renewal times

    Raises:
        DomainError: If t exceeds the path horizon or δ ≤ 0
    """
    _check_window(path, t, delta)
    times, jumps, drift, method = _path_arrays(path)
    renewals = _greedy(times, jumps, drift, 0.0, t, delta)
    return CoveringCount(
        n=len(renewals),
        literal=_literal(renewals, 0.0, t),
        renewal_times=np.asarray(renewals, dtype=float),
        method=method,
        horizon=t,
        delta=delta,
    )


def count_covering_path_multi(path: PathLike, t: float, deltas: Sequence[float]) -> List[CoveringCount]:
    """Counts for several meshes on the same path (nested δ, single-path mode)."""
    return [count_covering_path(path, t, d) for d in deltas]


def count_covering_renewal(
    spec: SubordinatorSpec,
    t: float,
    delta: float,
    engine: Union[EventsEngine, SkeletonEngine],
    rng: RngLike,
) -> CoveringCount:
    """
    Covering count from i.i.d. passage times η₁, η₂, ... summed until they pass t.

    Raises:
        EligibilityError: If the spec is compound Poisson without drift
    """
    if not t > 0 or not delta > 0:
        raise DomainError(f"t and delta must be > 0, got t={t}, delta={delta}")
    check_eligible(spec)
    gen = as_generator(rng)

    block = int(min(max(1.2 * t * eval_phi(spec, 1.0 / delta), 16.0), 100_000))
    sums: List[np.ndarray] = []
    total = 0.0
    while total <= t:
        etas, _ = sample_first_passages(spec, delta, engine, block, gen, check=False)
        partial = compensated_cumsum(etas, start=total)
        sums.append(partial)
        total = float(partial[-1])
    partials = np.concatenate(sums)
    renewals = partials[partials <= t]
    method = CountMethod.RENEWAL
    return CoveringCount(
        n=int(renewals.size),
        literal=_literal(renewals.tolist(), 0.0, t),
        renewal_times=renewals,
        method=method,
        horizon=t,
        delta=delta,
    )


def splitting_defect(path: PathLike, t: float, splits: Sequence[float], delta: float) -> int:
    """
    Literal-count defect of cutting [0, t] at ``splits`` and restarting each piece.

    Returns:
        A = global literal count − Σ piece literal counts (0 without splits)

    Raises:
        DomainError: If split points are not strictly increasing inside (0, t)
    """
    _check_window(path, t, delta)
    cuts = [float(s) for s in splits]
    if any(not 0.0 < s < t for s in cuts) or any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise DomainError(f"split points must be increasing inside (0, {t}), got {cuts}")

    times, jumps, drift, _ = _path_arrays(path)
    whole = _literal(_greedy(times, jumps, drift, 0.0, t, delta), 0.0, t)
    edges = [0.0] + cuts + [t]
    pieces = 0
    for a, b in zip(edges[:-1], edges[1:]):
        pieces += _literal(_greedy(times, jumps, drift, a, b, delta), a, b)
    return whole - pieces


def random_splits(t: float, pieces: int, rng: RngLike) -> List[float]:
    """``pieces − 1`` sorted uniform split points in (0, t)."""
    if pieces < 1:
        raise PreconditionError(f"need at least one piece, got {pieces}")
    gen = as_generator(rng)
    return sorted(float(s) for s in gen.uniform(0.0, t, pieces - 1))
