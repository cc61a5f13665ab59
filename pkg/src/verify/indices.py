"""
Box-counting index: slope of ln N(t, δ) against ln(1/δ).

Each replica regresses on its own path with nested δ; slopes are then
averaged across replicas and compared with the index of Φ.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np
from scipy import stats

from src.core.error_models import PreconditionError
from src.core.logging import get_logger
from src.model.eligibility import check_eligible
from src.model.families import SubordinatorSpec
from src.model.laplace import regular_variation
from src.potential.models import DeltaGrid
from src.simulate.passage import EventsEngine
from src.simulate.rng import RngStream
from src.utils.numeric import decades_spanned, mean_and_stderr
from src.verify.common import EngineLike, as_delta_list, counts_at, new_report, replica_records
from src.verify.models import ExperimentReport, ReportRow, Verdict
from src.verify.replicas import run_replicas
from src.verify.workers import covering_replica

logger = get_logger(__name__)

MIN_DECADES = 3.0


def replica_slope(deltas: Sequence[float], counts: Sequence[float]) -> Optional[float]:
    """Least-squares slope of ln N on ln(1/δ), skipping meshes with N = 0."""
    pts = [(math.log(1.0 / d), math.log(n)) for d, n in zip(deltas, counts) if n > 0]
    if len(pts) < 2:
        return None
    x, y = zip(*pts)
    if len(set(y)) == 1:
        return 0.0
    return float(stats.linregress(x, y).slope)


def run_indices(
    spec: SubordinatorSpec,
    t: float,
    deltas: Union[Sequence[float], DeltaGrid],
    replicas: int,
    engine: Optional[EngineLike] = None,
    rng: Optional[RngStream] = None,
    workers: int = 1,
    tolerance: float = 0.05,
) -> ExperimentReport:
    """
    Mean regression slope over replicas against the regular-variation index.

    Raises:
        PreconditionError: If the meshes span fewer than 3 decades
    """
    check_eligible(spec)
    deltas = as_delta_list(deltas)
    if decades_spanned(deltas) < MIN_DECADES - 1e-9:
        raise PreconditionError(f"index regression needs >= {MIN_DECADES:g} decades of delta, got {decades_spanned(deltas):.3g}")
    engine = engine or EventsEngine()
    rng = rng or RngStream(0)

    params = {"spec": spec, "t": t, "deltas": deltas, "engine": engine, "counting": "path"}
    results = run_replicas(covering_replica, params, replicas, rng, workers, desc="indices")
    tag = engine.tag(spec, min(deltas))

    slopes = []
    for r in results:
        s = replica_slope(deltas, [n for (n, _, _) in r])
        if s is not None:
            slopes.append(s)
    skipped = replicas - len(slopes)

    report = new_report(
        "indices",
        spec,
        rng,
        {"t": t, "deltas": deltas, "replicas": replicas, "engine": engine, "tolerance": tolerance},
    )
    for k, delta in enumerate(deltas):
        n = counts_at(results, k)
        positive = n[n > 0]
        mean_log, se_log = mean_and_stderr(np.log(positive)) if positive.size > 1 else (math.nan, 0.0)
        report.rows.append(
            ReportRow(
                delta=delta,
                statistic="mean ln N",
                value=mean_log,
                stderr=se_log,
                replicas=int(positive.size),
                engine=tag,
            )
        )

    rv = regular_variation(spec)
    if not slopes:
        report.verdicts.append(Verdict(criterion="slope_matches_index", passed=False, detail="no replica had two positive counts"))
        return report
    slope, slope_se = mean_and_stderr(np.array(slopes))
    report.rows.append(
        ReportRow(
            delta=deltas[-1],
            statistic="slope",
            value=slope,
            stderr=slope_se,
            replicas=len(slopes),
            engine=tag,
            extra={"index": rv.index if rv else None, "skipped_replicas": skipped},
        )
    )
    if skipped:
        report.warnings.append(f"{skipped} replicas skipped: fewer than two meshes with N > 0")
    if rv is None:
        report.verdicts.append(
            Verdict(criterion="slope_matches_index", passed=True, blocking=False, value=slope, detail="no declared index to compare with")
        )
    else:
        gap = abs(slope - rv.index)
        report.verdicts.append(
            Verdict(
                criterion="slope_matches_index",
                passed=gap <= tolerance,
                value=slope,
                threshold=tolerance,
                detail=f"slope {slope:.4f} ± {slope_se:.2g} vs index {rv.index:g}",
            )
        )
    report.tables["replicas"] = replica_records(results, deltas, t, tag)
    return report
