"""Plain-text description of a subordinator spec."""

from typing import List

from src.model.eligibility import validate
from src.model.families import SubordinatorSpec
from src.model.laplace import eval_phi, regular_variation
from src.potential.analytic import LOWER_BAND, UPPER_BAND, potential_bounds

PHI_GRID = [1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4, 1e6]
BAND_DELTAS = [1e-1, 1e-2, 1e-3, 1e-4]


def describe(spec: SubordinatorSpec) -> str:
    """Φ on a reference grid, eligibility, regular-variation index and the U(δ) band."""
    lines: List[str] = [f"spec: {spec.summary()}", ""]

    lines.append("Laplace exponent:")
    for lam in PHI_GRID:
        lines.append(f"  Phi({lam:g}) = {eval_phi(spec, lam):.8g}")
    lines.append("")

    lines.append(f"eligibility: {validate(spec).summary()}")

    rv = regular_variation(spec)
    if rv is None:
        lines.append("regular variation: no index known")
    else:
        note = f" ({rv.slowly_varying_note})" if rv.slowly_varying_note else ""
        exact = ", U(delta) asymptotic is exact" if rv.exact else ""
        lines.append(f"regular variation: {rv.label}{note}{exact}")
    lines.append("")

    lines.append(f"potential band: {LOWER_BAND:.6f}/Phi(1/delta) <= U(delta) <= {UPPER_BAND:.6f}/Phi(1/delta)")
    for delta in BAND_DELTAS:
        lo, hi = potential_bounds(spec, delta)
        lines.append(f"  delta={delta:g}: [{lo:.6g}, {hi:.6g}]")
    return "\n".join(lines) + "\n"
