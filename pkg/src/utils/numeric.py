"""
Numeric helpers shared by the simulation and verification code.
"""

import math
from typing import List, Sequence

import numpy as np


def compensated_cumsum(values: Sequence[float], start: float = 0.0) -> np.ndarray:
    """
    Running sums start + v₁ + ... + v_k with Neumaier compensation.

    Keeps partial sums of many equal terms on the correctly rounded value,
    e.g. ten terms 0.1 sum to exactly 1.0.

    Example:
        >>> float(compensated_cumsum([0.1] * 10)[-1])
        1.0
    """
    out = np.empty(len(values))
    total, comp = float(start), 0.0
    for i, v in enumerate(values):
        v = float(v)
        s = total + v
        if abs(total) >= abs(v):
            comp += (total - s) + v
        else:
            comp += (v - s) + total
        total = s
        out[i] = total + comp
    return out


def log_spaced(lo: float, hi: float, per_decade: int) -> List[float]:
    """
    Decreasing log-spaced values from ``hi`` down to ``lo`` inclusive.

    Example:
        >>> log_spaced(1e-3, 1e-1, 1)
        [0.1, 0.01, 0.001]
    """
    if not 0 < lo <= hi:
        raise ValueError(f"need 0 < lo <= hi, got lo={lo}, hi={hi}")
    if per_decade < 1:
        raise ValueError(f"per_decade must be >= 1, got {per_decade}")
    steps = int(round(math.log10(hi / lo) * per_decade))
    if steps == 0:
        return [hi]
    exponents = np.linspace(math.log10(hi), math.log10(lo), steps + 1)
    return [float(10.0 ** e) for e in exponents]


def decades_spanned(values: Sequence[float]) -> float:
    """log10(max / min) of a set of positive values."""
    return math.log10(max(values) / min(values))


def mean_and_stderr(samples: np.ndarray) -> tuple:
    """Sample mean and its central-limit standard error (0 for constant samples)."""
    samples = np.asarray(samples, dtype=float)
    n = samples.size
    if n == 0:
        raise ValueError("no samples")
    if np.all(samples == samples[0]):
        return float(samples[0]), 0.0
    mean = float(samples.mean())
    if n < 2:
        return mean, math.inf
    return mean, float(samples.std(ddof=1) / math.sqrt(n))
