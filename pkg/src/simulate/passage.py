"""
First-passage sampling of T₁(δ) = inf{t ≥ 0: X_t > δ}.

Two engines:
- events: truncated jump measure plus (compensated) drift; between jumps the
  level is linear, so drift crossings are solved in closed form
- skeleton: exact increments on a grid of step h; the first grid time above δ
  overestimates T, so counts built from it are biased low
"""

import math
from typing import Annotated, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.config import get_config
from src.core.error_models import DomainError, UnsupportedEngineError
from src.model.families import SubordinatorSpec
from src.model.eligibility import check_eligible
from src.model.laplace import eval_phi, has_infinite_activity, small_jump_mean
from src.simulate.increments import sample_increments, supports_exact_increments
from src.simulate.jumps import effective_epsilon, jump_rate, sample_jumps
from src.simulate.rng import RngLike, as_generator

MAX_BLOCK = 1_000_000


class EventsEngine(BaseModel):
    """Event-driven engine; ε is absolute when given, else ``epsilon_ratio`` · δ."""

    kind: Literal["events"] = "events"
    epsilon: Optional[float] = Field(default=None, ge=0.0)
    epsilon_ratio: float = Field(default_factory=lambda: get_config().epsilon_ratio, gt=0.0, lt=1.0)
    compensate: bool = True

    model_config = ConfigDict(frozen=True, extra="forbid")

    def resolve_epsilon(self, spec: SubordinatorSpec, delta: float) -> float:
        """ε used at mesh δ; finite-activity families default to exact (ε = 0)."""
        if self.epsilon is not None:
            eps = self.epsilon
        elif not has_infinite_activity(spec):
            eps = 0.0
        else:
            eps = self.epsilon_ratio * delta
        return effective_epsilon(spec, eps)

    def tag(self, spec: SubordinatorSpec, delta: float) -> str:
        eps = self.resolve_epsilon(spec, delta)
        if eps == 0:
            return "events(exact)"
        return f"events(eps={eps:.3g}{', compensated' if self.compensate else ''})"


class SkeletonEngine(BaseModel):
    """Grid engine with step h; passage times are biased upward."""

    kind: Literal["skeleton"] = "skeleton"
    step: float = Field(..., gt=0.0)

    model_config = ConfigDict(frozen=True, extra="forbid")

    def tag(self, spec: SubordinatorSpec, delta: float) -> str:
        return f"skeleton(h={self.step:.3g}, T biased upward)"


Engine = Annotated[Union[EventsEngine, SkeletonEngine], Field(discriminator="kind")]


class FirstPassageSample(BaseModel):
    """One draw of T₁(δ) with its overshoot X_T − δ."""

    time: float = Field(..., gt=0.0)
    overshoot: float = Field(..., ge=0.0)
    engine: str

    model_config = ConfigDict(frozen=True)


def _potential_upper(spec: SubordinatorSpec, delta: float) -> float:
    """Cheap upper bound on E T₁(δ) used to size sampling blocks."""
    bound = math.e / eval_phi(spec, 1.0 / delta)
    if spec.drift > 0:
        bound = min(bound, delta / spec.drift)
    return bound


def _check_engine(spec: SubordinatorSpec, engine: Union[EventsEngine, SkeletonEngine]) -> None:
    if isinstance(engine, SkeletonEngine) and not supports_exact_increments(spec):
        raise UnsupportedEngineError(f"skeleton engine needs exact increments; {spec.family} has none")


def _events_passages(
    spec: SubordinatorSpec, delta: float, engine: EventsEngine, size: int, gen: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    eps = engine.resolve_epsilon(spec, delta)
    rate = jump_rate(spec, eps)
    drift = spec.drift + (small_jump_mean(spec, eps) if engine.compensate else 0.0)
    if rate == 0:
        if drift <= 0:
            raise DomainError(f"{spec.summary()} never crosses: no jumps above epsilon and no drift")
        return np.full(size, delta / drift), np.zeros(size)

    block = int(min(max(2.0 * rate * _potential_upper(spec, delta) + 8.0, 8.0), MAX_BLOCK))
    times = np.empty(size)
    overshoots = np.empty(size)
    for k in range(size):
        t0, level = 0.0, 0.0
        while True:
            tau = t0 + np.cumsum(gen.exponential(1.0 / rate, block))
            jumps = sample_jumps(spec, eps, block, gen)
            after = np.cumsum(jumps)
            pre = level + drift * (tau - t0) + np.concatenate(([0.0], after[:-1]))
            post = pre + jumps
            i_post = int(np.searchsorted(post, delta, side="right"))
            if i_post == block:
                t0, level = float(tau[-1]), float(post[-1])
                continue
            if pre[i_post] > delta:
                # level reached δ on the linear stretch before jump i_post
                prev_t = t0 if i_post == 0 else float(tau[i_post - 1])
                prev_level = level if i_post == 0 else float(post[i_post - 1])
                times[k] = prev_t + (delta - prev_level) / drift
                overshoots[k] = 0.0
            else:
                times[k] = float(tau[i_post])
                overshoots[k] = float(post[i_post]) - delta
            break
    return times, overshoots


def _skeleton_passages(
    spec: SubordinatorSpec, delta: float, engine: SkeletonEngine, size: int, gen: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    h = engine.step
    block = int(min(max(1.5 * _potential_upper(spec, delta) / h + 8.0, 8.0), MAX_BLOCK))
    times = np.empty(size)
    overshoots = np.empty(size)
    for k in range(size):
        steps_done, level = 0, 0.0
        while True:
            values = level + np.cumsum(sample_increments(spec, h, block, gen))
            i = int(np.searchsorted(values, delta, side="right"))
            if i == block:
                steps_done += block
                level = float(values[-1])
                continue
            times[k] = (steps_done + i + 1) * h
            overshoots[k] = float(values[i]) - delta
            break
    return times, overshoots


def sample_first_passages(
    spec: SubordinatorSpec,
    delta: float,
    engine: Union[EventsEngine, SkeletonEngine],
    size: int,
    rng: RngLike,
    check: bool = True,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw ``size`` independent passage times and overshoots above level δ.

    Args:
        spec: Eligible subordinator specification
        delta: Level δ > 0
        engine: EventsEngine or SkeletonEngine
        size: Number of draws
        rng: Stream key or generator
        check: Run the eligibility check (callers in tight loops check once)

    Returns:
        (times, overshoots) arrays

    Raises:
        DomainError: If δ ≤ 0
        EligibilityError: If the spec is compound Poisson without drift
        UnsupportedEngineError: If the engine cannot simulate the family
    """
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if check:
        check_eligible(spec)
    _check_engine(spec, engine)
    gen = as_generator(rng)
    if isinstance(engine, SkeletonEngine):
        return _skeleton_passages(spec, delta, engine, size, gen)
    return _events_passages(spec, delta, engine, size, gen)


def sample_first_passage(
    spec: SubordinatorSpec,
    delta: float,
    engine: Union[EventsEngine, SkeletonEngine],
    rng: RngLike,
) -> FirstPassageSample:
    """One draw of T₁(δ); the engine tag records truncation or grid bias."""
    times, overshoots = sample_first_passages(spec, delta, engine, 1, rng)
    return FirstPassageSample(time=float(times[0]), overshoot=float(overshoots[0]), engine=engine.tag(spec, delta))
