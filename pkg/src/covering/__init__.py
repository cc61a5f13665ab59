"""
Covering module: greedy covering counts N(t, δ) and the splitting defect.
"""

from src.covering.models import CountMethod, CoveringCount
from src.covering.counting import (
    count_covering_path,
    count_covering_path_multi,
    count_covering_renewal,
    random_splits,
    splitting_defect,
)

__all__ = [
    "CountMethod",
    "CoveringCount",
    "count_covering_path",
    "count_covering_path_multi",
    "count_covering_renewal",
    "random_splits",
    "splitting_defect",
]
