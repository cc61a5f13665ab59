"""
Example tail functions for the truncated-general family.

Referenced from configs as ``"src.model.tails:<name>"``.
"""

import math

from scipy import special


def stable_like(x: float, alpha: float = 0.5, scale: float = 1.0) -> float:
    """Π̄(x) = scale · x^{−α} / Γ(1−α), the positive-stable tail."""
    return scale * x ** (-alpha) / math.gamma(1.0 - alpha)


def tempered_stable(x: float, alpha: float = 0.5, rate: float = 1.0, scale: float = 1.0) -> float:
    """
    Tail of the Lévy density scale · α/Γ(1−α) · y^{−1−α} e^{−rate·y}.

    Uses the upper incomplete gamma function Γ(−α, rate·x) expressed through
    Γ(1−α, ·) to stay on the positive-argument branch.
    """
    z = rate * x
    upper = special.gammaincc(1.0 - alpha, z) * math.gamma(1.0 - alpha)
    # Γ(−α, z) = (Γ(1−α, z) − z^{−α} e^{−z}) / (−α)
    incomplete = (z ** (-alpha) * math.exp(-z) - upper) / alpha
    return max(scale * alpha / math.gamma(1.0 - alpha) * rate ** alpha * incomplete, 0.0)


def exponential_jumps(x: float, rate: float = 1.0, mean: float = 1.0) -> float:
    """Finite-activity tail rate · e^{−x/mean}."""
    return rate * math.exp(-x / mean)
