"""
Replica functions run inside worker processes.

Each takes (stream, params) and returns plain tuples so results pickle
cheaply; params carry the spec, horizon, meshes and engine.
"""

from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from src.covering.counting import (
    count_covering_path_multi,
    count_covering_renewal,
    random_splits,
    splitting_defect,
)
from src.model.families import SubordinatorSpec
from src.simulate.passage import EventsEngine, SkeletonEngine
from src.simulate.paths import EventList, Skeleton, simulate_events, simulate_skeleton
from src.simulate.rng import RngStream

CountTriple = Tuple[int, int, float]


def make_path(
    spec: SubordinatorSpec,
    t: float,
    deltas: Sequence[float],
    engine: Union[EventsEngine, SkeletonEngine],
    gen: np.random.Generator,
) -> Union[EventList, Skeleton]:
    """One path on [0, t] fine enough for the smallest mesh."""
    if isinstance(engine, SkeletonEngine):
        return simulate_skeleton(spec, t, engine.step, gen)
    finest = min(deltas)
    eps = engine.resolve_epsilon(spec, finest)
    return simulate_events(spec, t, eps, engine.compensate, gen, delta=finest)


def covering_replica(stream: RngStream, params: Dict[str, Any]) -> List[CountTriple]:
    """(N, literal N, max renewal time) for every δ of one replica."""
    spec, t, deltas, engine = params["spec"], params["t"], params["deltas"], params["engine"]
    if params.get("counting", "path") == "renewal":
        out = []
        for k, delta in enumerate(deltas):
            c = count_covering_renewal(spec, t, delta, engine, stream.child(k))
            out.append((c.n, c.literal, c.max_renewal_time))
        return out
    gen = stream.generator()
    path = make_path(spec, t, deltas, engine, gen)
    return [(c.n, c.literal, c.max_renewal_time) for c in count_covering_path_multi(path, t, deltas)]


def splitting_replica(stream: RngStream, params: Dict[str, Any]) -> List[Tuple[int, float, int]]:
    """(pieces j, δ, defect A) for every (j, δ) on one random path."""
    spec, t, deltas, engine = params["spec"], params["t"], params["deltas"], params["engine"]
    gen = stream.generator()
    path = make_path(spec, t, deltas, engine, gen)
    out = []
    for j in params["pieces"]:
        splits = random_splits(t, j, gen)
        for delta in deltas:
            out.append((j, delta, splitting_defect(path, t, splits, delta)))
    return out
