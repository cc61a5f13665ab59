"""
Hausdorff-function quantities:

- f(x) = ln|ln x| / Φ(ln|ln x| / x) for 0 < x < 1/e
- the product Φ·f under both readings of its argument
- g(x) = Φ(x) lnln x / Φ(x lnln x) and its growth, for x ≥ e^e
"""

import math
from typing import List, Optional, Sequence

import numpy as np

from src.core.error_models import DomainError
from src.core.logging import get_logger
from src.model.families import SubordinatorSpec
from src.model.laplace import eval_phi
from src.simulate.rng import RngStream
from src.utils.numeric import log_spaced
from src.verify.common import new_report
from src.verify.models import ExperimentReport, ReportRow, Verdict

logger = get_logger(__name__)

E_E = math.exp(math.e)
# relative change per decade below which g is read as settled
SETTLED_CHANGE = 1e-3


def hausdorff_f(spec: SubordinatorSpec, x: float) -> float:
    """
    f(x) = ln|ln x| / Φ(ln|ln x| / x).

    Raises:
        DomainError: Unless 0 < x < 1/e
    """
    if not 0.0 < x < math.exp(-1.0):
        raise DomainError(f"f(x) needs 0 < x < 1/e, got {x}")
    ll = math.log(abs(math.log(x)))
    return ll / eval_phi(spec, ll / x)


def default_profile_grid() -> List[float]:
    return sorted(log_spaced(1e-8, 0.3, 4))


def hausdorff_profile(
    spec: SubordinatorSpec,
    xs: Optional[Sequence[float]] = None,
    rng: Optional[RngStream] = None,
) -> ExperimentReport:
    """
    Profile Φ(x)f(x) and Φ(1/x)f(x) on a log grid in (0, 1/e).

    Both readings are reported with non-blocking verdicts ``>= 1``.
    """
    xs = sorted(float(x) for x in (xs or default_profile_grid()))
    report = new_report("hausdorff", spec, rng or RngStream(0), {"x": xs})
    literal, inverse = [], []
    for x in xs:
        f = hausdorff_f(spec, x)
        a = eval_phi(spec, x) * f
        b = eval_phi(spec, 1.0 / x) * f
        literal.append(a)
        inverse.append(b)
        report.rows.append(ReportRow(statistic="f", value=f, extra={"x": x}))
        report.rows.append(ReportRow(statistic="Phi(x)*f(x)", value=a, extra={"x": x}))
        report.rows.append(ReportRow(statistic="Phi(1/x)*f(x)", value=b, extra={"x": x}))

    for name, values in (("Phi(x)*f(x)", literal), ("Phi(1/x)*f(x)", inverse)):
        low = min(values)
        report.verdicts.append(
            Verdict(
                criterion=f"{name} >= 1",
                passed=low >= 1.0,
                blocking=False,
                value=low,
                threshold=1.0,
                detail=f"minimum {low:.6g} over {len(xs)} grid points",
            )
        )
    return report


def condition_g(spec: SubordinatorSpec, x: float) -> float:
    """g(x) = Φ(x) lnln x / Φ(x lnln x), defined for x ≥ e^e."""
    if x < E_E * (1 - 1e-12):
        raise DomainError(f"g(x) needs x >= e^e ~ {E_E:.4f}, got {x}")
    ll = math.log(math.log(x))
    return eval_phi(spec, x) * ll / eval_phi(spec, x * ll)


def classify_growth(xs: Sequence[float], gs: Sequence[float]) -> str:
    """
    "diverges", "finite-limit" or "bounded", read off the last three decades.

    Settled values give "finite-limit"; steady growth in every decade gives
    "diverges"; anything else is "bounded".
    """
    top = max(xs)
    checkpoints = [top / 10.0 ** k for k in (3, 2, 1, 0)]
    vals = [float(np.interp(math.log(p), np.log(xs), gs)) for p in checkpoints]
    changes = [(b - a) / abs(a) for a, b in zip(vals, vals[1:])]
    if all(abs(c) < SETTLED_CHANGE for c in changes):
        return "finite-limit"
    if all(c > SETTLED_CHANGE for c in changes):
        return "diverges"
    return "bounded"


def default_condition_grid() -> List[float]:
    return log_spaced(20.0, 1e12, 4)


def check_condition_2_4(
    spec: SubordinatorSpec,
    xs: Optional[Sequence[float]] = None,
    rng: Optional[RngStream] = None,
) -> ExperimentReport:
    """
    Evaluate g on an increasing grid and report whether it diverges.

    Raises:
        DomainError: If the grid starts below e^e or spans fewer than three decades
    """
    xs = sorted(float(x) for x in (xs or default_condition_grid()))
    if xs[0] < E_E * (1 - 1e-12):
        raise DomainError(f"grid must start at or above e^e ~ {E_E:.4f}, got {xs[0]}")
    if math.log10(xs[-1] / xs[0]) < 3.0:
        raise DomainError("grid must span at least three decades")
    gs = [condition_g(spec, x) for x in xs]
    trend = classify_growth(xs, gs)

    report = new_report("condition-2-4", spec, rng or RngStream(0), {"x": xs})
    for x, g in zip(xs, gs):
        report.rows.append(ReportRow(statistic="g", value=g, extra={"x": x}))
    report.verdicts.append(
        Verdict(
            criterion="g_diverges",
            passed=trend == "diverges",
            value=gs[-1],
            detail=f"trend over the last three decades: {trend}",
        )
    )
    logger.info(f"Condition g for {spec.summary()}: {trend}")
    return report
