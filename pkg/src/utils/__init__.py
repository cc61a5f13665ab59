"""
Shared numeric helpers for subcover.

- Compensated cumulative sums for arrival times
- Log-spaced δ meshes
- Sample mean and standard error
"""

from src.utils.numeric import compensated_cumsum, decades_spanned, log_spaced, mean_and_stderr

__all__ = [
    "compensated_cumsum",
    "decades_spanned",
    "log_spaced",
    "mean_and_stderr",
]
