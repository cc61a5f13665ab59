"""
Experiments on the limit U(δ) N(t, δ) → t and its two corollaries.

- run_theorem1: replica mean and variance of U·N per δ
- run_theorem1_single_path: one long path with nested δ
- run_cor1: N·U/t with U from the convolution series (positive drift)
- run_cor2: N·δ^α / (t Γ(1+α) L(1/δ)) from the regular-variation index
"""

import math
from typing import List, Optional, Sequence, Union

import numpy as np

from src.core.error_models import PreconditionError
from src.core.logging import get_logger
from src.covering.counting import count_covering_path_multi
from src.model.eligibility import check_eligible
from src.model.families import SubordinatorSpec
from src.model.laplace import regular_variation, slowly_varying
from src.potential.models import DeltaGrid, PotentialEstimate
from src.potential.monte_carlo import potential_mc
from src.potential.series import potential_series
from src.simulate.passage import EventsEngine
from src.simulate.rng import RngStream
from src.verify.common import (
    AUX_STREAM,
    EngineLike,
    as_delta_list,
    counts_at,
    new_report,
    potentials_for,
    replica_records,
)
from src.verify.models import ExperimentReport, ReportRow, Verdict
from src.verify.replicas import run_replicas
from src.verify.stats import confidence_interval, distance_trend, non_increasing, summarize
from src.verify.workers import covering_replica, make_path
logger = get_logger(__name__)


def _engine_tag(engine: EngineLike, spec: SubordinatorSpec, deltas: Sequence[float]) -> str:
    return engine.tag(spec, min(deltas))


def _collect(
    spec: SubordinatorSpec,
    t: float,
    deltas: List[float],
    replicas: int,
    engine: EngineLike,
    rng: RngStream,
    workers: int,
    counting: str,
    desc: str,
):
    params = {"spec": spec, "t": t, "deltas": deltas, "engine": engine, "counting": counting}
    return run_replicas(covering_replica, params, replicas, rng, workers, desc=desc)


def _ratio_rows(
    statistic: str,
    deltas: Sequence[float],
    samples: Sequence[np.ndarray],
    potentials: Sequence[Optional[PotentialEstimate]],
    replicas: int,
    engine_tag: str,
    mean_counts: Sequence[float],
) -> List[ReportRow]:
    rows = []
    for delta, x, pot, mean_n in zip(deltas, samples, potentials, mean_counts):
        s = summarize(x)
        lo, hi = confidence_interval(s["mean"], s["stderr"])
        rows.append(
            ReportRow(
                delta=delta,
                statistic=statistic,
                value=s["mean"],
                stderr=s["stderr"],
                ci_low=lo,
                ci_high=hi,
                u_value=pot.value if pot else None,
                u_method=pot.method.value if pot else None,
                replicas=replicas,
                engine=engine_tag,
                extra={
                    "variance": s["variance"],
                    "variance_stderr": s["variance_stderr"],
                    "mean_n": mean_n,
                    "exact": bool(pot is not None and pot.exact and s["variance"] == 0.0),
                },
            )
        )
    return rows


def _limit_verdicts(
    rows: Sequence[ReportRow],
    target: float,
    tolerance: float,
    slack: float = 0.0,
    check_variance: bool = True,
) -> List[Verdict]:
    """Closeness at the smallest δ, and trends of |mean − target| and of the variance."""
    last = rows[-1]
    gap = abs(last.value - target)
    allowed = tolerance + slack
    verdicts = [
        Verdict(
            criterion="mean_within_tolerance_at_smallest_delta",
            passed=gap <= allowed,
            value=last.value,
            threshold=allowed,
            detail=f"|{last.value:.6f} - {target:g}| = {gap:.4g} vs tolerance {allowed:.4g} at delta={last.delta:g}",
        )
    ]
    passed, detail = distance_trend([r.value for r in rows], [r.stderr for r in rows], target)
    verdicts.append(Verdict(criterion="distance_to_limit_non_increasing", passed=passed, detail=detail))
    if check_variance:
        passed, detail = non_increasing([r.extra["variance"] for r in rows], [r.extra["variance_stderr"] for r in rows])
        verdicts.append(Verdict(criterion="variance_non_increasing", passed=passed, detail=detail))
    return verdicts


def run_theorem1(
    spec: SubordinatorSpec,
    t: float,
    deltas: Union[Sequence[float], DeltaGrid],
    replicas: int,
    engine: Optional[EngineLike] = None,
    rng: Optional[RngStream] = None,
    workers: int = 1,
    tolerance: Optional[float] = None,
    counting: str = "path",
    potential_replicas: int = 20_000,
) -> ExperimentReport:
    """
    Replica test of U(δ) N(t, δ) → t.

    Args:
        spec: Eligible subordinator specification
        t: Horizon
        deltas: Decreasing meshes or a DeltaGrid
        replicas: Independent replicas
        engine: Simulation engine (default: events engine)
        rng: Experiment stream
        workers: Worker processes
        tolerance: Allowed |mean − t| at the smallest δ (default 0.05·t)
        counting: "path" (nested δ on one path per replica) or "renewal"
        potential_replicas: Replicas for Monte-Carlo U when no deterministic route exists

    Returns:
        ExperimentReport with one U*N row per δ

    Raises:
        EligibilityError: If the spec is compound Poisson without drift
    """
    check_eligible(spec)
    deltas = as_delta_list(deltas)
    engine = engine or EventsEngine()
    rng = rng or RngStream(0)
    tolerance = 0.05 * t if tolerance is None else tolerance

    potentials = potentials_for(spec, deltas, rng, engine, potential_replicas)
    results = _collect(spec, t, deltas, replicas, engine, rng, workers, counting, "theorem1")
    tag = _engine_tag(engine, spec, deltas)

    samples = [pot.value * counts_at(results, k) for k, pot in enumerate(potentials)]
    mean_counts = [float(counts_at(results, k).mean()) for k in range(len(deltas))]
    rows = _ratio_rows("U*N", deltas, samples, potentials, replicas, tag, mean_counts)

    # a Monte-Carlo U carries its own relative error into U·N
    last = potentials[-1]
    slack = 3.0 * t * last.stderr / last.value
    report = new_report(
        "theorem1",
        spec,
        rng,
        {"t": t, "deltas": deltas, "replicas": replicas, "engine": engine, "tolerance": tolerance, "counting": counting},
    )
    report.rows.extend(rows)
    report.verdicts.extend(_limit_verdicts(rows, t, tolerance, slack))
    report.tables["replicas"] = replica_records(results, deltas, t, tag)
    return report


def run_theorem1_single_path(
    spec: SubordinatorSpec,
    t: float,
    deltas: Union[Sequence[float], DeltaGrid],
    engine: Optional[EngineLike] = None,
    rng: Optional[RngStream] = None,
    tolerance: Optional[float] = None,
    potential_replicas: int = 20_000,
) -> ExperimentReport:
    """U(δ) N(t, δ) along one long path with nested δ; the verdict is informative only."""
    check_eligible(spec)
    deltas = as_delta_list(deltas)
    engine = engine or EventsEngine()
    rng = rng or RngStream(0)
    tolerance = 0.25 * t if tolerance is None else tolerance

    potentials = potentials_for(spec, deltas, rng, engine, potential_replicas)
    path = make_path(spec, t, deltas, engine, rng.child(0).generator())
    counts = count_covering_path_multi(path, t, deltas)
    tag = _engine_tag(engine, spec, deltas)

    report = new_report("theorem1-single-path", spec, rng, {"t": t, "deltas": deltas, "engine": engine, "tolerance": tolerance})
    for delta, pot, c in zip(deltas, potentials, counts):
        report.rows.append(
            ReportRow(
                delta=delta,
                statistic="U*N",
                value=pot.value * c.n,
                u_value=pot.value,
                u_method=pot.method.value,
                replicas=1,
                engine=tag,
                extra={"n": c.n, "literal": c.literal},
            )
        )
    final = report.rows[-1].value
    report.verdicts.append(
        Verdict(
            criterion="single_path_close_to_limit",
            passed=abs(final - t) <= tolerance,
            blocking=False,
            value=final,
            threshold=tolerance,
            detail=f"U*N = {final:.6f} at delta={deltas[-1]:g} on one path",
        )
    )
    return report


def run_cor1(
    spec: SubordinatorSpec,
    t: float,
    deltas: Union[Sequence[float], DeltaGrid],
    replicas: int,
    engine: Optional[EngineLike] = None,
    rng: Optional[RngStream] = None,
    workers: int = 1,
    tolerance: float = 0.05,
    mc_check_replicas: int = 0,
) -> ExperimentReport:
    """
    N(t, δ)·U(δ)/t → 1 with U from the alternating convolution series.

    Raises:
        PreconditionError: If the drift is zero
    """
    if spec.drift <= 0:
        raise PreconditionError("the series corollary needs drift d > 0")
    check_eligible(spec)
    deltas = as_delta_list(deltas)
    engine = engine or EventsEngine()
    rng = rng or RngStream(0)

    series = potential_series(spec, deltas)
    results = _collect(spec, t, deltas, replicas, engine, rng, workers, "path", "cor1")
    tag = _engine_tag(engine, spec, deltas)
    samples = [counts_at(results, k) * pot.value / t for k, pot in enumerate(series)]
    mean_counts = [float(counts_at(results, k).mean()) for k in range(len(deltas))]
    rows = _ratio_rows("N*U_series/t", deltas, samples, series, replicas, tag, mean_counts)

    report = new_report(
        "cor1",
        spec,
        rng,
        {"t": t, "deltas": deltas, "replicas": replicas, "engine": engine, "tolerance": tolerance},
    )
    report.rows.extend(rows)
    slack = 3.0 * rows[-1].stderr + series[-1].stderr / series[-1].value
    report.verdicts.extend(_limit_verdicts(rows, 1.0, tolerance, slack, check_variance=False))
    for pot in series:
        report.warnings.extend(f for f in pot.flags if f not in report.warnings)

    if mc_check_replicas >= 2:
        aux = rng.child(AUX_STREAM)
        for k, pot in enumerate(series):
            mc = potential_mc(spec, pot.delta, mc_check_replicas, engine, aux.child(k))
            band = 3.0 * mc.stderr + pot.stderr + 1e-9
            report.verdicts.append(
                Verdict(
                    criterion=f"series_matches_monte_carlo_delta_{pot.delta:g}",
                    passed=abs(mc.value - pot.value) <= band,
                    blocking=False,
                    value=mc.value,
                    threshold=band,
                    detail=f"series {pot.value:.6g} vs monte-carlo {mc.value:.6g} ± {mc.stderr:.2g}",
                )
            )
    report.tables["replicas"] = replica_records(results, deltas, t, tag)
    return report


def run_cor2(
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
    N(t, δ) δ^α / (t Γ(1+α) L(1/δ)) → 1 for regularly varying Φ.

    Raises:
        PreconditionError: If the spec has no regular-variation index
    """
    rv = regular_variation(spec)
    if rv is None:
        raise PreconditionError(f"{spec.summary()} has no declared regular-variation index")
    check_eligible(spec)
    deltas = as_delta_list(deltas)
    engine = engine or EventsEngine()
    rng = rng or RngStream(0)

    results = _collect(spec, t, deltas, replicas, engine, rng, workers, "path", "cor2")
    tag = _engine_tag(engine, spec, deltas)
    alpha = rv.index
    samples = []
    for k, delta in enumerate(deltas):
        norm = t * math.gamma(1.0 + alpha) * slowly_varying(spec, 1.0 / delta) / delta ** alpha
        samples.append(counts_at(results, k) / norm)
    mean_counts = [float(counts_at(results, k).mean()) for k in range(len(deltas))]
    rows = _ratio_rows("N*delta^a/(t*G(1+a)*L(1/delta))", deltas, samples, [None] * len(deltas), replicas, tag, mean_counts)

    report = new_report(
        "cor2",
        spec,
        rng,
        {"t": t, "deltas": deltas, "replicas": replicas, "engine": engine, "tolerance": tolerance, "index": alpha},
    )
    report.rows.extend(rows)
    report.verdicts.extend(_limit_verdicts(rows, 1.0, tolerance, 3.0 * rows[-1].stderr, check_variance=False))
    if rv.slowly_varying_note:
        report.warnings.append(f"{rv.label}: {rv.slowly_varying_note}")
    report.tables["replicas"] = replica_records(results, deltas, t, tag)
    return report
