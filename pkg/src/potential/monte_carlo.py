"""
Monte-Carlo routes to U(δ) and U_q(δ).

U(δ) = E T₁(δ) is estimated from first-passage samples. U_q(δ) is
estimated twice by pipelines that share only the increment samplers:
- A integrates e^{−qt} 1{X_t ≤ δ} along skeleton paths
- B averages e^{−qT₁} from event-engine passages: U_q = (1 − E e^{−qT₁}) / q
"""

from typing import Optional, Tuple, Union

import numpy as np
from scipy import integrate

from src.core.error_models import DomainError, PreconditionError
from src.core.logging import get_logger
from src.model.eligibility import check_eligible
from src.model.families import SubordinatorSpec
from src.model.laplace import eval_phi
from src.potential.models import PotentialEstimate, PotentialMethod
from src.simulate.increments import sample_increments
from src.simulate.passage import EventsEngine, SkeletonEngine, sample_first_passages
from src.simulate.rng import RngLike
from src.utils.numeric import mean_and_stderr

logger = get_logger(__name__)

# skeleton steps per 1/Φ(1/δ), the natural time scale of T₁(δ)
SKELETON_STEPS_PER_SCALE = 400


def potential_mc(
    spec: SubordinatorSpec,
    delta: float,
    replicas: int,
    engine: Optional[Union[EventsEngine, SkeletonEngine]] = None,
    rng: Optional[RngLike] = None,
) -> PotentialEstimate:
    """
    U(δ) as the sample mean of T₁(δ) with a central-limit standard error.

    Raises:
        PreconditionError: If fewer than 2 replicas are requested
        EligibilityError: If the spec is compound Poisson without drift
    """
    if replicas < 2:
        raise PreconditionError(f"potential_mc needs at least 2 replicas, got {replicas}")
    if rng is None:
        raise PreconditionError("potential_mc needs a random stream")
    engine = engine or EventsEngine()
    check_eligible(spec)
    times, _ = sample_first_passages(spec, delta, engine, replicas, rng, check=False)
    value, stderr = mean_and_stderr(times)
    return PotentialEstimate(
        delta=delta,
        value=value,
        stderr=stderr,
        method=PotentialMethod.MONTE_CARLO,
        replicas=replicas,
        exact=stderr == 0.0 and engine.tag(spec, delta) == "events(exact)",
        engine=engine.tag(spec, delta),
    )


def default_skeleton_step(spec: SubordinatorSpec, delta: float) -> float:
    return 1.0 / (eval_phi(spec, 1.0 / delta) * SKELETON_STEPS_PER_SCALE)


def _discounted_occupation(
    spec: SubordinatorSpec, delta: float, q: float, h: float, gen: np.random.Generator
) -> float:
    """Trapezoid of e^{−qt} 1{X_t ≤ δ} over the grid of one skeleton path."""
    chunk = SKELETON_STEPS_PER_SCALE * 2
    indicator = [1.0]
    level = 0.0
    while True:
        values = level + np.cumsum(sample_increments(spec, h, chunk, gen))
        below = values <= delta
        indicator.extend(below.astype(float).tolist())
        if not below[-1]:
            break
        level = float(values[-1])
    ind = np.asarray(indicator)
    # X is nondecreasing: the indicator is 1 up to the crossing and 0 afterwards
    stop = int(np.argmin(ind)) + 1
    grid = h * np.arange(stop)
    return float(integrate.trapezoid(np.exp(-q * grid) * ind[:stop], grid))


def potential_q_two_ways(
    spec: SubordinatorSpec,
    delta: float,
    q: float,
    replicas: int,
    rng: RngLike,
    step: Optional[float] = None,
    engine: Optional[EventsEngine] = None,
) -> Tuple[PotentialEstimate, PotentialEstimate]:
    """
    Estimate U_q(δ) by the skeleton occupation integral (A) and by passage times (B).

    Args:
        spec: Eligible subordinator specification with exact increments
        delta: Level δ > 0
        q: Discount rate q > 0
        replicas: Replicas per estimator
        rng: Stream key or generator; A and B use separate child streams
        step: Skeleton step for A (default 1/(400 Φ(1/δ)); A carries an O(h) grid error)
        engine: Events engine for B

    Returns:
        (estimate A, estimate B)

    Raises:
        DomainError: If q ≤ 0 (use potential_mc for q = 0)
    """
    if not q > 0:
        raise DomainError(f"q-potentials need q > 0, got {q}; use potential_mc for q = 0")
    if replicas < 2:
        raise PreconditionError(f"need at least 2 replicas, got {replicas}")
    check_eligible(spec)
    h = step or default_skeleton_step(spec, delta)

    if isinstance(rng, np.random.Generator):
        gen_a, gen_b = rng.spawn(2)
    else:
        gen_a, gen_b = rng.child(0).generator(), rng.child(1).generator()

    occupations = np.array([_discounted_occupation(spec, delta, q, h, gen_a) for _ in range(replicas)])
    value_a, err_a = mean_and_stderr(occupations)
    estimate_a = PotentialEstimate(
        delta=delta,
        q=q,
        value=value_a,
        stderr=err_a,
        method=PotentialMethod.SKELETON_INTEGRAL,
        replicas=replicas,
        grid_step=h,
        engine=f"skeleton(h={h:.3g})",
    )

    engine = engine or EventsEngine()
    times, _ = sample_first_passages(spec, delta, engine, replicas, gen_b, check=False)
    discounted = np.exp(-q * times)
    mean_disc, err_disc = mean_and_stderr(discounted)
    estimate_b = PotentialEstimate(
        delta=delta,
        q=q,
        value=(1.0 - mean_disc) / q,
        stderr=err_disc / q,
        method=PotentialMethod.Q_IDENTITY,
        replicas=replicas,
        engine=engine.tag(spec, delta),
    )
    logger.debug(f"U_q(delta={delta:g}, q={q:g}): A={value_a:.6g}±{err_a:.2g}, B={estimate_b.value:.6g}")
    return estimate_a, estimate_b
