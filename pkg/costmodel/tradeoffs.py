"""
Space/query trade-off by grouping, and hybrid gradient + sampling optima
"""
import math
from enum import Enum
from typing import Union

import numpy as np
from pydantic import BaseModel

from utils.errors import PlanError
from utils.logger import cost_logger
from .expressions import CostExpression, CostTerm


class TradeoffPoint(BaseModel):
    """Leading-order costs when M observables are split into g groups"""
    g: float
    queries: float
    qubits: float
    evolution: float


def tradeoff_groups(M: int, N: int, epsilon: float, g: float) -> TradeoffPoint:
    """
    Run the gradient estimator separately on g groups of M/g observables

    Args:
        M: Number of observables
        N: System qubits
        epsilon: Target accuracy
        g: Number of groups, 1 <= g <= M

    Returns:
        U_psi queries sqrt(g M)/eps, qubits N + M/g, evolution time M/eps
    """
    if M < 1 or N < 0 or epsilon <= 0:
        raise PlanError(f"Need M >= 1, N >= 0 and eps > 0, got M={M}, N={N}, eps={epsilon}")
    if not 1 <= g <= M:
        raise PlanError(f"Group count g must lie in [1, {M}], got {g}")
    return TradeoffPoint(
        g=g,
        queries=math.sqrt(g * M) / epsilon,
        qubits=N + M / g,
        evolution=M / epsilon,
    )


def tradeoff_expressions() -> dict:
    """Symbolic forms of the three tradeoff_groups quantities"""
    return {
        'u_psi_queries': CostExpression.monomial({'g': 0.5, 'M': 0.5, 'eps': -1}, tilde=True),
        'qubits': CostExpression(
            terms=[CostTerm(powers={'N': 1}), CostTerm(powers={'M': 1, 'g': -1})], tilde=True
        ),
        'evolution_time': CostExpression.monomial({'M': 1, 'eps': -1}, tilde=True),
    }


class HybridRegime(str, Enum):
    """How fast commuting-group sizes T_k shrink with k"""
    EXPONENTIAL = "exp"
    POLYNOMIAL = "poly"


def _check_regime(regime: HybridRegime, M: float, epsilon: float, alpha: float) -> HybridRegime:
    regime = HybridRegime(regime)
    if M < 1 or epsilon <= 0:
        raise PlanError(f"Need M >= 1 and eps > 0, got M={M}, eps={epsilon}")
    if regime is HybridRegime.EXPONENTIAL and not alpha > 0:
        raise PlanError(f"Exponential regime needs alpha > 0, got {alpha}")
    if regime is HybridRegime.POLYNOMIAL and not alpha > 1:
        raise PlanError(f"Polynomial regime needs alpha > 1, got {alpha}")
    return regime


def group_size_bound(regime: HybridRegime, k: int, M: float, alpha: float, gamma: float = 1.0) -> float:
    """Upper bound on T_k (exp) or lower bound on T_k (poly)"""
    regime = HybridRegime(regime)
    if k < 1:
        raise PlanError(f"Group index k starts at 1, got {k}")
    if regime is HybridRegime.EXPONENTIAL:
        return gamma * M * math.exp(-alpha * k) / (1.0 - math.exp(-alpha))
    return gamma * M / (alpha - 1.0) * k ** (-alpha)


def hybrid_cost(
    regime: HybridRegime,
    K: Union[float, np.ndarray],
    M: float,
    epsilon: float,
    alpha: float,
) -> Union[float, np.ndarray]:
    """
    Leading-order cost of sampling K commuting groups and running the gradient
    estimator on the rest

    exp:  sqrt(M e^{-alpha K})/eps + K/eps^2
    poly: sqrt(M K^{1-alpha})/eps + K/eps^2, defined for K >= 1
    """
    regime = _check_regime(regime, M, epsilon, alpha)
    K = np.asarray(K, dtype=float)
    if regime is HybridRegime.EXPONENTIAL:
        remaining = M * np.exp(-alpha * K)
    else:
        if np.any(K < 1):
            raise PlanError("Polynomial regime cost is defined for K >= 1")
        remaining = M * K ** (1.0 - alpha)
    cost = np.sqrt(remaining) / epsilon + K / epsilon ** 2
    return float(cost) if cost.ndim == 0 else cost


def poly_epsilon_exponent(alpha: float) -> float:
    """eps exponent of the optimal polynomial-regime cost: 2 alpha / (1 + alpha)"""
    if not alpha > 1:
        raise PlanError(f"Polynomial regime needs alpha > 1, got {alpha}")
    return 2.0 * alpha / (1.0 + alpha)


class HybridOptimum(BaseModel):
    regime: HybridRegime
    M: float
    epsilon: float
    alpha: float
    K_star: float
    cost: float
    gradient_only_cost: float
    epsilon_exponent: float
    expression: CostExpression


def hybrid_optimum(regime: HybridRegime, M: float, epsilon: float, alpha: float) -> HybridOptimum:
    """
    Optimal number K* of sampled groups and the resulting cost

    Args:
        regime: "exp" or "poly"
        M: Number of observables
        epsilon: Target accuracy
        alpha: Falloff rate of group sizes

    Returns:
        HybridOptimum with K* = ln(alpha^2 M eps^2 / 4)/alpha (exp, clamped to
        >= 0 and forced to 0 when sqrt(M) eps <= 1) or
        (M (alpha-1)^2 eps^2 / 4)^{1/(1+alpha)} (poly, clamped to >= 1)
    """
    regime = _check_regime(regime, M, epsilon, alpha)
    gradient_only = math.sqrt(M) / epsilon

    if regime is HybridRegime.EXPONENTIAL:
        if math.sqrt(M) * epsilon <= 1:
            k_star = 0.0
        else:
            k_star = max(0.0, math.log(alpha ** 2 * M * epsilon ** 2 / 4.0) / alpha)
        if k_star == 0.0:
            # nothing sampled: plain gradient estimation
            exponent = 1.0
            expression = CostExpression.monomial({'M': 0.5, 'eps': -1}, tilde=True)
        else:
            exponent = 2.0
            expression = CostExpression.monomial({'eps': -2, 'alpha': -1}, logs={'M': 1}, tilde=True)
    else:
        k_star = max(1.0, (M * (alpha - 1.0) ** 2 * epsilon ** 2 / 4.0) ** (1.0 / (1.0 + alpha)))
        exponent = poly_epsilon_exponent(alpha)
        expression = CostExpression.monomial(
            {'M': 1.0 / (1.0 + alpha), 'eps': -exponent}, tilde=True
        )

    cost = hybrid_cost(regime, k_star, M, epsilon, alpha)
    cost_logger.debug(f"Hybrid {regime.value} optimum: K*={k_star:.4f}, cost={cost:.4e} (gradient only {gradient_only:.4e})")
    return HybridOptimum(
        regime=regime,
        M=M,
        epsilon=epsilon,
        alpha=alpha,
        K_star=k_star,
        cost=cost,
        gradient_only_cost=gradient_only,
        epsilon_exponent=exponent,
        expression=expression,
    )
