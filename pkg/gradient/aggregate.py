"""
Median boosting
"""
import math

import numpy as np

from utils.errors import PlanError


def repetitions_for(M: int, delta: float) -> int:
    """T = ceil(18 ln(2M/delta)) so that M medians all succeed w.p. >= 1 - delta"""
    if M < 1 or not 0 < delta < 1:
        raise PlanError(f"Need M >= 1 and delta in (0, 1), got M={M}, delta={delta}")
    return math.ceil(18.0 * math.log(2.0 * M / delta))


def median_aggregate(estimates) -> np.ndarray:
    """Component-wise lower median of a (T, M) array"""
    estimates = np.asarray(estimates, dtype=float)
    if estimates.ndim == 1:
        estimates = estimates[:, None]
    if estimates.shape[0] == 0:
        raise PlanError("Cannot aggregate an empty set of estimates")
    ordered = np.sort(estimates, axis=0)
    return ordered[(ordered.shape[0] - 1) // 2]
