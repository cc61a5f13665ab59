"""
Replica execution across worker processes.

Replica i always draws from child stream i of the experiment stream, and
results are returned in replica order, so the worker count never changes a result.
"""

import concurrent.futures as cf
import sys
from typing import Any, Callable, Dict, List, Sequence, Tuple

from tqdm import tqdm

from src.core.config import get_config
from src.core.logging import get_logger
from src.simulate.rng import RngStream

logger = get_logger(__name__)

ReplicaFn = Callable[[RngStream, Dict[str, Any]], Any]


def _run_chunk(fn: ReplicaFn, indices: Sequence[int], stream: RngStream, params: Dict[str, Any]) -> List[Tuple[int, Any]]:
    return [(i, fn(stream.child(i), params)) for i in indices]


def _chunks(n: int, workers: int) -> List[range]:
    """Contiguous index ranges, a few per worker for load balancing."""
    pieces = max(1, min(n, workers * 8)) if workers > 1 else max(1, min(n, 20))
    size, extra = divmod(n, pieces)
    out, start = [], 0
    for k in range(pieces):
        stop = start + size + (1 if k < extra else 0)
        if stop > start:
            out.append(range(start, stop))
        start = stop
    return out


def _show_progress() -> bool:
    return get_config().progress and sys.stderr.isatty()


def run_replicas(
    fn: ReplicaFn,
    params: Dict[str, Any],
    replicas: int,
    stream: RngStream,
    workers: int = 1,
    desc: str = "replicas",
) -> List[Any]:
    """
    Run ``fn(stream.child(i), params)`` for i = 0..replicas-1.

    Args:
        fn: Module-level function (picklable for worker processes)
        params: Picklable keyword data shared by every replica
        replicas: Number of replicas
        stream: Experiment stream; replica i uses stream.child(i)
        workers: Worker processes; 1 runs in-process
        desc: Progress-bar label

    Returns:
        Results ordered by replica index
    """
    if replicas < 1:
        raise ValueError(f"replicas must be >= 1, got {replicas}")
    chunks = _chunks(replicas, workers)
    results: List[Any] = [None] * replicas
    bar = tqdm(total=replicas, desc=desc, disable=not _show_progress(), leave=False)

    try:
        if workers <= 1:
            for chunk in chunks:
                for i, value in _run_chunk(fn, chunk, stream, params):
                    results[i] = value
                bar.update(len(chunk))
        else:
            with cf.ProcessPoolExecutor(max_workers=workers) as ex:
                futures = {ex.submit(_run_chunk, fn, chunk, stream, params): chunk for chunk in chunks}
                for future in cf.as_completed(futures):
                    for i, value in future.result():
                        results[i] = value
                    bar.update(len(futures[future]))
    finally:
        bar.close()

    logger.debug(f"{desc}: {replicas} replicas done on {workers} worker(s)")
    return results
