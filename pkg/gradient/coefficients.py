"""
Central-difference coefficients for the degree-2m first-derivative formula
"""
import numpy as np

from utils.errors import PlanError


def difference_coefficients(m: int) -> np.ndarray:
    """
    Antisymmetric weights a_ell for ell = -m..m

    sum_ell a_ell f(ell h) / h equals f'(0) exactly for every polynomial f of
    degree <= 2m. Antisymmetry makes the even moments vanish, leaving the m odd
    moment conditions 2 sum_{ell=1}^{m} a_ell ell^p = [p == 1], p = 1, 3, ..., 2m-1.

    Args:
        m: Order parameter, m >= 1

    Returns:
        Array of length 2m+1 indexed by ell + m
    """
    m = int(m)
    if m < 1:
        raise PlanError(f"Difference order m must be >= 1, got {m}")
    nodes = np.arange(1, m + 1, dtype=float)
    powers = 2 * np.arange(m) + 1
    system = 2.0 * nodes[None, :] ** powers[:, None]
    rhs = np.zeros(m)
    rhs[0] = 1.0
    try:
        half = np.linalg.solve(system, rhs)
        # one step of iterative refinement; the moment matrix is badly scaled for larger m
        half += np.linalg.solve(system, rhs - system @ half)
    except np.linalg.LinAlgError as e:
        raise PlanError(f"Difference system for m={m} is singular: {e}") from None
    return np.concatenate([-half[::-1], [0.0], half])


def moment(coefficients: np.ndarray, p: int) -> float:
    """sum_ell a_ell ell^p"""
    m = (len(coefficients) - 1) // 2
    ells = np.arange(-m, m + 1, dtype=float)
    return float(np.sum(coefficients * ells ** p))
