"""Sample-path dumps with a marginal sanity check against exact increments."""

from typing import Optional

import numpy as np
from scipy import stats

from src.core.logging import get_logger
from src.model.families import SubordinatorSpec
from src.simulate.increments import sample_increments, supports_exact_increments
from src.simulate.passage import EventsEngine, SkeletonEngine
from src.simulate.paths import EventList, path_records
from src.simulate.rng import RngStream
from src.verify.common import EngineLike, new_report
from src.verify.models import ExperimentReport, ReportRow, Verdict
from src.verify.workers import make_path

logger = get_logger(__name__)

# paths written as tables; the rest only feed the marginal check
MAX_DUMPED_PATHS = 10
KS_MIN_PATHS = 20
KS_ALPHA = 1e-3


def run_simulate_paths(
    spec: SubordinatorSpec,
    t: float,
    paths: int,
    engine: Optional[EngineLike] = None,
    rng: Optional[RngStream] = None,
    delta: float = 1e-2,
    dump: int = MAX_DUMPED_PATHS,
) -> ExperimentReport:
    """
    Simulate ``paths`` independent paths on [0, t] and tabulate the first ``dump``.

    When the family has exact increments and the engine is event driven,
    the law of X_t across paths is compared with direct draws by a
    two-sample Kolmogorov-Smirnov test (non-blocking: truncation at ε
    shifts the law slightly).
    """
    engine = engine or EventsEngine()
    rng = rng or RngStream(0)
    report = new_report(
        "simulate-paths", spec, rng, {"t": t, "paths": paths, "delta": delta, "dump": dump, "engine": engine}
    )

    finals = np.empty(paths)
    monotone = True
    for i in range(paths):
        path = make_path(spec, t, [delta], engine, rng.child(i).generator())
        records = path_records(path)
        values = np.array([r["value"] for r in records])
        monotone = monotone and bool(values[0] >= 0 and np.all(np.diff(values) >= 0))
        finals[i] = values[-1]
        events = path.n_events if isinstance(path, EventList) else len(records) - 1
        if i < dump:
            report.tables[f"path_{i:03d}"] = records
            report.warnings.extend(w for w in path.warnings if w not in report.warnings)
        report.rows.append(
            ReportRow(
                statistic="X_t",
                value=float(finals[i]),
                engine=engine.tag(spec, delta),
                extra={"path": i, "events": events},
            )
        )

    report.verdicts.append(
        Verdict(criterion="paths_nondecreasing", passed=monotone, detail="every path starts at 0 and never decreases")
    )

    if isinstance(engine, SkeletonEngine) or not supports_exact_increments(spec):
        return report
    if paths < KS_MIN_PATHS:
        report.warnings.append(f"marginal check skipped: needs at least {KS_MIN_PATHS} paths")
        return report
    direct = sample_increments(spec, t, paths, rng.child(paths).generator())
    result = stats.ks_2samp(finals, direct)
    report.verdicts.append(
        Verdict(
            criterion="marginal_matches_exact_increments",
            passed=bool(result.pvalue > KS_ALPHA),
            blocking=False,
            value=float(result.pvalue),
            threshold=KS_ALPHA,
            detail=f"KS statistic {result.statistic:.4f}",
        )
    )
    return report
