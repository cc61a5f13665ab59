"""
Geometric δ-grids: levels δ_j with U(δ_j) = r^j.
"""

import math
from typing import Callable, List, Optional

from src.core.error_models import DomainError, PreconditionError
from src.core.logging import get_logger
from src.model.families import SubordinatorSpec
from src.potential.analytic import (
    deterministic_available,
    potential_asymptotic,
    potential_best,
    potential_quadrature,
)
from src.potential.models import DeltaGrid
from src.potential.series import potential_series

logger = get_logger(__name__)

# δ range over which the deterministic evaluators are trusted
DELTA_FLOOR = 1e-12
DELTA_CEILING = 1e6
MAX_BISECTIONS = 200


def potential_evaluator(spec: SubordinatorSpec, method: str = "best") -> Callable[[float], float]:
    """
    Deterministic, monotone δ ↦ U(δ) for the named method.

    Raises:
        PreconditionError: For unknown methods or methods without a deterministic route
    """
    if method == "best":
        if not deterministic_available(spec):
            raise PreconditionError(f"no deterministic U(δ) for {spec.summary()}")
        return lambda x: potential_best(spec, x).value
    if method == "asymptotic":
        return lambda x: potential_asymptotic(spec, x).value
    if method == "quadrature":
        return lambda x: potential_quadrature(spec, x).value
    if method == "series":
        return lambda x: potential_series(spec, [x])[0].value
    raise PreconditionError(f"unknown or non-monotone U method {method!r} for grid solving")


def _bracket(u: Callable[[float], float], target: float, start: float) -> Optional[tuple]:
    """(lo, hi) with U(lo) ≤ target ≤ U(hi), searching by factors of 10 from ``start``."""
    lo = hi = start
    while u(hi) < target:
        hi *= 10.0
        if hi > DELTA_CEILING:
            return None
    while u(lo) > target:
        lo /= 10.0
        if lo < DELTA_FLOOR:
            return None
    return lo, hi


def solve_delta_grid(
    spec: SubordinatorSpec,
    r: float,
    j_max: int,
    method: str = "best",
    tolerance: float = 1e-3,
) -> DeltaGrid:
    """
    Solve U(δ_j) = r^j for j = 1..j_max by bisection on log δ.

    Args:
        spec: Subordinator specification
        r: Ratio in (0, 1)
        j_max: Number of levels
        method: U evaluator name (best, asymptotic, quadrature, series)
        tolerance: Relative tolerance on U(δ_j) / r^j

    Returns:
        DeltaGrid; truncated with a warning where no bracket exists

    Example:
        >>> grid = solve_delta_grid(DriftOnlySpec(drift=1.0), 0.5, 3)
        >>> [round(x, 3) for x in grid.levels]
        [0.5, 0.25, 0.125]
    """
    if not 0 < r < 1:
        raise DomainError(f"ratio must lie in (0, 1), got {r}")
    if j_max < 1:
        raise DomainError(f"j_max must be >= 1, got {j_max}")
    u = potential_evaluator(spec, method)

    levels: List[float] = []
    targets: List[float] = []
    values: List[float] = []
    warnings: List[str] = []
    start = 1.0
    for j in range(1, j_max + 1):
        target = r ** j
        bracket = _bracket(u, target, start)
        if bracket is None:
            message = f"no δ in [{DELTA_FLOOR:g}, {DELTA_CEILING:g}] reaches U = r^{j} = {target:.3g}; grid truncated at {j - 1} levels"
            logger.warning(message)
            warnings.append(message)
            break
        lo, hi = bracket
        mid, value = hi, u(hi)
        for _ in range(MAX_BISECTIONS):
            if abs(value / target - 1.0) <= tolerance / 2.0:
                break
            mid = math.sqrt(lo * hi)
            value = u(mid)
            if value < target:
                lo = mid
            else:
                hi = mid
        levels.append(mid)
        targets.append(target)
        values.append(value)
        start = mid
    return DeltaGrid(
        ratio=r,
        levels=levels,
        targets=targets,
        values=values,
        method=method,
        tolerance=tolerance,
        warnings=warnings,
    )
