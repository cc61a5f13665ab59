"""Helpers shared by the experiment runners."""

import math
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from src.core.error_models import DomainError
from src.model.families import SubordinatorSpec, spec_to_document
from src.potential.analytic import potential_best
from src.potential.models import DeltaGrid, PotentialEstimate
from src.simulate.passage import EventsEngine, SkeletonEngine
from src.simulate.rng import RngStream
from src.verify.models import ExperimentReport

# child index of the experiment stream reserved for auxiliary Monte Carlo
AUX_STREAM = 2 ** 40
DEFAULT_POTENTIAL_REPLICAS = 20_000

EngineLike = Union[EventsEngine, SkeletonEngine]


def as_delta_list(deltas: Union[Sequence[float], DeltaGrid, float]) -> List[float]:
    """Strictly decreasing list of positive meshes."""
    if isinstance(deltas, DeltaGrid):
        values = list(deltas.levels)
    elif isinstance(deltas, (int, float)):
        values = [float(deltas)]
    else:
        values = [float(x) for x in deltas]
    if not values:
        raise DomainError("delta list is empty")
    if min(values) <= 0:
        raise DomainError(f"deltas must be positive, got {values}")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise DomainError(f"deltas must be strictly decreasing, got {values}")
    return values


def potentials_for(
    spec: SubordinatorSpec,
    deltas: Sequence[float],
    stream: RngStream,
    engine: Optional[EngineLike] = None,
    replicas: int = DEFAULT_POTENTIAL_REPLICAS,
) -> List[PotentialEstimate]:
    """Best available U(δ) for every δ; Monte-Carlo fallbacks use the auxiliary stream."""
    aux = stream.child(AUX_STREAM)
    return [potential_best(spec, d, rng=aux.child(k), replicas=replicas, engine=engine) for k, d in enumerate(deltas)]


def new_report(
    experiment: str,
    spec: SubordinatorSpec,
    stream: RngStream,
    parameters: Dict[str, Any],
) -> ExperimentReport:
    return ExperimentReport(
        experiment=experiment,
        spec=spec.summary(),
        spec_document=spec_to_document(spec),
        seed=stream.seed,
        parameters=_jsonable(parameters),
    )


def _jsonable(value: Any) -> Any:
    """Parameters as plain JSON values (engines and grids dumped through pydantic)."""
    if hasattr(value, "model_dump"):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def counts_at(results: Sequence[Sequence[tuple]], k: int, field: int = 0) -> np.ndarray:
    """Column ``field`` of the k-th δ across replicas."""
    return np.array([r[k][field] for r in results], dtype=float)


def replica_records(
    results: Sequence[Sequence[tuple]], deltas: Sequence[float], t: float, engine_tag: str
) -> List[Dict[str, Any]]:
    """Replica output table: (replica, δ, t, engine, N, literal N, max renewal time)."""
    rows = []
    for i, per_delta in enumerate(results):
        for delta, (n, literal, max_time) in zip(deltas, per_delta):
            rows.append(
                {
                    "replica": i,
                    "delta": delta,
                    "t": t,
                    "engine": engine_tag,
                    "n": int(n),
                    "literal": int(literal),
                    "max_renewal_time": max_time,
                }
            )
    return rows
