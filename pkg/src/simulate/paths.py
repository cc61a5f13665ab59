"""
Sample paths: event lists and grid skeletons.

Both representations validate monotonicity on construction, so every path
handed to the covering code is nondecreasing and starts at 0.
"""

import csv
import math
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.config import get_config
from src.core.error_models import DomainError, PreconditionError
from src.core.logging import get_logger
from src.model.families import SubordinatorSpec
from src.model.laplace import has_infinite_activity, small_jump_mean
from src.simulate.increments import sample_increments
from src.simulate.jumps import effective_epsilon, jump_rate, sample_jumps
from src.simulate.rng import RngLike, as_generator

logger = get_logger(__name__)

# ε above this fraction of δ is reported as coarse
COARSE_EPSILON_FRACTION = 0.1


class EventList(BaseModel):
    """Jump times and sizes on [0, horizon] plus a constant effective drift."""

    kind: Literal["events"] = "events"
    times: np.ndarray
    jumps: np.ndarray
    drift: float = Field(..., ge=0.0)
    horizon: float = Field(..., gt=0.0)
    epsilon: float = Field(default=0.0, ge=0.0)
    compensated: bool = False
    warnings: List[str] = Field(default_factory=list)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def check_events(self) -> "EventList":
        if self.times.shape != self.jumps.shape or self.times.ndim != 1:
            raise ValueError("times and jumps must be 1-d arrays of equal length")
        if self.times.size:
            if np.any(np.diff(self.times) < 0):
                raise ValueError("event times must be sorted")
            if self.times[0] < 0 or self.times[-1] > self.horizon:
                raise ValueError("event times must lie in [0, horizon]")
            if np.any(self.jumps <= 0):
                raise ValueError("jump sizes must be positive")
        return self

    @property
    def n_events(self) -> int:
        return int(self.times.size)

    def value_at(self, t: float) -> float:
        """X_t, right-continuous: a jump at time t is included."""
        k = int(np.searchsorted(self.times, t, side="right"))
        return self.drift * t + float(self.jumps[:k].sum())


class Skeleton(BaseModel):
    """Cumulative values on the grid 0, h, 2h, ..., with values[0] = 0."""

    kind: Literal["skeleton"] = "skeleton"
    step: float = Field(..., gt=0.0)
    values: np.ndarray
    horizon: float = Field(..., gt=0.0)
    warnings: List[str] = Field(default_factory=list)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def check_values(self) -> "Skeleton":
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("skeleton needs at least two grid values")
        if self.values[0] != 0:
            raise ValueError("skeleton must start at 0")
        if np.any(np.diff(self.values) < 0):
            raise ValueError("skeleton values must be nondecreasing")
        if self.step * (self.values.size - 1) < self.horizon * (1 - 1e-12):
            raise ValueError("skeleton grid does not reach the horizon")
        return self

    @property
    def times(self) -> np.ndarray:
        return self.step * np.arange(self.values.size)


SamplePath = Annotated[Union[EventList, Skeleton], Field(discriminator="kind")]


def grid_size(horizon: float, h: float) -> int:
    """Number of steps ⌈horizon/h⌉, ignoring float noise in the ratio."""
    return max(1, math.ceil(horizon / h * (1.0 - 1e-12)))


def simulate_events(
    spec: SubordinatorSpec,
    horizon: float,
    eps: float,
    compensate: bool,
    rng: RngLike,
    delta: Optional[float] = None,
) -> EventList:
    """
    Event-driven path: Poisson arrivals of jumps above ε plus drift.

    Args:
        spec: Subordinator specification
        horizon: Time horizon, > 0
        eps: Truncation level; 0 allowed only for finite activity
        compensate: Add ∫₀^ε x Π(dx) to the drift
        rng: Stream key or generator
        delta: Optional mesh the path will be used with; a coarse ε is noted in warnings

    Returns:
        EventList path

    Raises:
        DomainError: For ε = 0 with infinite activity or a nonpositive horizon
        PreconditionError: If the expected number of events is unmanageable
    """
    if not horizon > 0:
        raise DomainError(f"horizon must be > 0, got {horizon}")
    warnings: List[str] = []
    used_eps = effective_epsilon(spec, eps)
    if used_eps != eps:
        warnings.append(f"epsilon raised from {eps:g} to the tail truncation {used_eps:g}")
    if delta is not None and used_eps > COARSE_EPSILON_FRACTION * delta and has_infinite_activity(spec):
        warnings.append(f"epsilon {used_eps:g} is coarse relative to delta {delta:g}")

    rate = jump_rate(spec, used_eps)
    expected = rate * horizon
    limit = get_config().max_path_events
    if expected > limit:
        raise PreconditionError(
            f"expected {expected:.3g} events exceeds the limit {limit}; raise epsilon or shorten the horizon"
        )

    gen = as_generator(rng)
    n = int(gen.poisson(expected)) if expected > 0 else 0
    times = np.sort(gen.uniform(0.0, horizon, n))
    jumps = sample_jumps(spec, used_eps, n, gen)

    drift = spec.drift + (small_jump_mean(spec, used_eps) if compensate else 0.0)
    for message in warnings:
        logger.warning(message)
    return EventList(
        times=times,
        jumps=jumps,
        drift=drift,
        horizon=horizon,
        epsilon=used_eps,
        compensated=compensate,
        warnings=warnings,
    )


def simulate_skeleton(spec: SubordinatorSpec, horizon: float, h: float, rng: RngLike) -> Skeleton:
    """
    Cumulative sums of ⌈horizon/h⌉ exact increments of length h.

    Raises:
        UnsupportedEngineError: For families without exact increments
    """
    if not h > 0:
        raise DomainError(f"skeleton step must be > 0, got {h}")
    if not horizon > 0:
        raise DomainError(f"horizon must be > 0, got {horizon}")
    n = grid_size(horizon, h)
    steps = sample_increments(spec, h, n, rng)
    values = np.concatenate(([0.0], np.cumsum(steps)))
    return Skeleton(step=h, values=values, horizon=horizon)


def path_records(path: Union[EventList, Skeleton]) -> List[Dict[str, float]]:
    """
    ``time, jump, value`` records of a path.

    Event lists get one record per jump (value after the jump) and a final
    record at the horizon; skeletons get one record per grid point with the
    increment in the jump column.
    """
    if isinstance(path, EventList):
        values = path.drift * path.times + np.cumsum(path.jumps)
        records = [
            {"time": float(t), "jump": float(j), "value": float(v)}
            for t, j, v in zip(path.times, path.jumps, values)
        ]
        records.append({"time": path.horizon, "jump": 0.0, "value": path.value_at(path.horizon)})
        return records
    increments = np.diff(path.values, prepend=0.0)
    return [
        {"time": float(t), "jump": float(j), "value": float(v)}
        for t, j, v in zip(path.times, increments, path.values)
    ]


def write_path_csv(path: Union[EventList, Skeleton], file_path: Union[str, Path]) -> Path:
    """Dump a path as ``time,jump,value`` records with a header line."""
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["time", "jump", "value"])
        for record in path_records(path):
            writer.writerow([repr(record["time"]), repr(record["jump"]), repr(record["value"])])
    logger.debug(f"Wrote path to {file_path}")
    return file_path
