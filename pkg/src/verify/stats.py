"""
Summary statistics and trend checks for replica data.

Trends are judged by adjacent 3-sigma comparisons: a sequence is
"non-increasing" unless some step up exceeds ``sigmas`` combined standard
errors.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.utils.numeric import mean_and_stderr

Z_95 = 1.959963984540054


def variance_and_stderr(samples: Sequence[float]) -> Tuple[float, float]:
    """
    Unbiased sample variance and its large-sample standard error
    sqrt((m4 − s⁴) / n).
    """
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n < 2:
        return 0.0, math.inf
    var = float(x.var(ddof=1))
    if var == 0.0:
        return 0.0, 0.0
    m4 = float(np.mean((x - x.mean()) ** 4))
    return var, math.sqrt(max(m4 - var * var, 0.0) / n)


def confidence_interval(mean: float, stderr: float, z: float = Z_95) -> Tuple[float, float]:
    return mean - z * stderr, mean + z * stderr


def increases(values: Sequence[float], errors: Sequence[float], sigmas: float = 3.0) -> List[int]:
    """Indices i where values[i+1] exceeds values[i] by more than ``sigmas`` combined errors."""
    out = []
    for i in range(len(values) - 1):
        spread = sigmas * math.hypot(errors[i], errors[i + 1])
        if values[i + 1] - values[i] > spread + 1e-12 * max(abs(values[i]), abs(values[i + 1]), 1.0):
            out.append(i)
    return out


def non_increasing(values: Sequence[float], errors: Sequence[float], sigmas: float = 3.0) -> Tuple[bool, str]:
    """(passed, detail) for a non-increasing trend at ``sigmas``."""
    bad = increases(values, errors, sigmas)
    if not bad:
        return True, f"no step up beyond {sigmas:g} sigma across {len(values)} points"
    steps = ", ".join(f"{values[i]:.4g}->{values[i + 1]:.4g}" for i in bad)
    return False, f"increase beyond {sigmas:g} sigma: {steps}"


def distance_trend(
    values: Sequence[float], errors: Sequence[float], target: float, sigmas: float = 3.0
) -> Tuple[bool, str]:
    """Whether |value − target| is non-increasing along the sequence."""
    return non_increasing([abs(v - target) for v in values], errors, sigmas)


def summarize(samples: Sequence[float]) -> dict:
    """Mean, its standard error, variance and the variance's standard error."""
    x = np.asarray(samples, dtype=float)
    mean, se = mean_and_stderr(x)
    var, var_se = variance_and_stderr(x)
    return {"mean": mean, "stderr": se, "variance": var, "variance_stderr": var_se, "n": int(x.size)}


def within(value: float, target: float, tolerance: float, slack: Optional[float] = None) -> bool:
    """|value − target| ≤ tolerance (+ slack)."""
    return abs(value - target) <= tolerance + (slack or 0.0)
