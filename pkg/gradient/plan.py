"""
Solved parameters for simultaneous gradient estimation
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from utils.config import config
from utils.errors import BudgetError, PlanError
from utils.logger import gradient_logger
from .coefficients import difference_coefficients
from .aggregate import repetitions_for


class GradientPlan(BaseModel):
    """Solved estimator parameters, serialized into reports as-is"""
    family: str
    M: int
    N: int
    epsilon: float
    delta: float
    c: Optional[float] = None
    z: List[float]
    m: int
    r: float
    S: float
    n: List[int]
    T: int
    coefficients: List[float]
    a_const: float
    b_const: float
    log_base: int = 2
    x_max: float
    clamped: bool = False
    original_n: Optional[List[int]] = None
    representable_range: List[float]

    @property
    def register_sizes(self) -> List[int]:
        return [2 ** w for w in self.n]

    @property
    def index_qubits(self) -> int:
        return sum(self.n)

    @property
    def total_qubits(self) -> int:
        """N + 1 + sum n_i"""
        return self.N + 1 + self.index_qubits

    @property
    def z_norm(self) -> float:
        return float(np.linalg.norm(self.z))

    def coefficient(self, ell: int) -> float:
        return self.coefficients[ell + self.m]

    def nonzero_coefficients(self) -> List[Tuple[int, float]]:
        return [
            (ell, a) for ell, a in zip(range(-self.m, self.m + 1), self.coefficients)
            if a != 0.0
        ]

    def coefficient_l1(self) -> float:
        return float(np.sum(np.abs(self.coefficients)))


def _check_common(M: int, epsilon: float, delta: float):
    if M < 1:
        raise PlanError(f"Need at least one observable, got M={M}")
    if not epsilon > 0:
        raise PlanError(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < 1:
        raise PlanError(f"delta must lie in (0, 1), got {delta}")


def _index_widths(z: Sequence[float], epsilon: float) -> List[int]:
    return [max(1, math.ceil(math.log2(12.0 * zi / epsilon))) for zi in z]


def _finish(plan_fields: dict, max_qubits: Optional[int], allow_clamp: Optional[bool]) -> GradientPlan:
    n = list(plan_fields['n'])
    S, r = plan_fields['S'], plan_fields['r']
    for zi, width in zip(plan_fields['z'], n):
        # range condition N_i > 2 S r z_i
        if not 2 ** width > 2 * S * r * zi:
            raise PlanError(f"Register of {width} qubits cannot represent gradients up to {zi}")

    max_qubits = config.simulation.max_qubits if max_qubits is None else max_qubits
    allow_clamp = config.gradient.allow_clamp if allow_clamp is None else allow_clamp
    N = plan_fields['N']
    total = N + 1 + sum(n)
    if total > max_qubits:
        if not allow_clamp:
            raise BudgetError(
                f"Plan needs {total} qubits (N={N}, index widths {n}) but the budget is {max_qubits}; "
                f"enable clamping or raise --max-qubits"
            )
        original = list(n)
        while N + 1 + sum(n) > max_qubits:
            widest = int(np.argmax(n))
            if n[widest] <= 1:
                raise BudgetError(f"Cannot fit {len(n)} index registers into {max_qubits} qubits")
            n[widest] -= 1
        gradient_logger.warning(f"Clamped index widths {original} -> {n} to fit {max_qubits} qubits")
        plan_fields['clamped'] = True
        plan_fields['original_n'] = original
    plan_fields['n'] = n
    plan_fields['representable_range'] = [2 ** w / (2 * S * r) for w in n]
    return GradientPlan(**plan_fields)


def solve_plan_uniform(
    M: int,
    epsilon: float,
    delta: float,
    c: Optional[float] = None,
    num_system_qubits: int = 0,
    max_qubits: Optional[int] = None,
    allow_clamp: Optional[bool] = None,
) -> GradientPlan:
    """
    Parameters for M observables with unit norm bound (derivatives bounded by c^k)

    Args:
        M: Number of observables
        epsilon: Target accuracy, 0 < epsilon <= c
        delta: Target failure probability
        c: Derivative bound constant (default from config, 2)
        num_system_qubits: N, used for the qubit budget
        max_qubits: Budget override (default from config)
        allow_clamp: Permit shrinking index registers to fit the budget

    Returns:
        Solved GradientPlan
    """
    c = config.gradient.c if c is None else float(c)
    _check_common(M, epsilon, delta)
    if epsilon > c:
        raise PlanError(f"epsilon={epsilon} exceeds the derivative bound c={c}")

    root_m = math.sqrt(M)
    m = max(1, math.ceil(math.log2(c * root_m / epsilon)))
    lead = 9.0 * c * m * root_m
    r = 1.0 / (lead * (81 * 8 * 42 * math.pi * c * m * root_m / epsilon) ** (1.0 / (2 * m)))
    S = 4.0 / (epsilon * r)
    z = [c] * M
    gradient_logger.info(f"Uniform plan: M={M}, eps={epsilon}, m={m}, 1/r={1 / r:.3f}, S={S:.1f}")
    return _finish(
        dict(
            family="uniform",
            M=M,
            N=num_system_qubits,
            epsilon=epsilon,
            delta=delta,
            c=c,
            z=z,
            m=m,
            r=r,
            S=S,
            n=_index_widths(z, epsilon),
            T=repetitions_for(M, delta),
            coefficients=difference_coefficients(m).tolist(),
            a_const=config.gradient.a_const,
            b_const=config.gradient.b_const,
            x_max=r * m,
        ),
        max_qubits,
        allow_clamp,
    )


def solve_plan_general(
    bounds: Sequence[float],
    epsilon: float,
    delta: float,
    num_system_qubits: int = 0,
    max_qubits: Optional[int] = None,
    allow_clamp: Optional[bool] = None,
) -> GradientPlan:
    """Parameters for observables with individual norm bounds B_j, using z = 2B"""
    bounds = [float(b) for b in bounds]
    _check_common(len(bounds), epsilon, delta)
    if any(b <= 0 for b in bounds):
        raise PlanError(f"All norm bounds must be positive, got {bounds}")
    z = [2.0 * b for b in bounds]
    z_norm = float(np.linalg.norm(z))
    if epsilon >= z_norm:
        raise PlanError(f"epsilon={epsilon} must be below ||z||={z_norm:.4f}")

    a_const = config.gradient.a_const
    m = max(1, math.ceil(math.log2(z_norm / epsilon)))
    lead = 9.0 * z_norm * math.sqrt(m / 2.0)
    r = 1.0 / (lead * (64 * 8 * a_const * math.pi * z_norm * math.sqrt(m / 2.0) / epsilon) ** (1.0 / (2 * m)))
    S = 4.0 / (epsilon * r)
    gradient_logger.info(f"General plan: B={bounds}, eps={epsilon}, m={m}, 1/r={1 / r:.3f}, S={S:.1f}")
    return _finish(
        dict(
            family="general",
            M=len(bounds),
            N=num_system_qubits,
            epsilon=epsilon,
            delta=delta,
            z=z,
            m=m,
            r=r,
            S=S,
            n=_index_widths(z, epsilon),
            T=repetitions_for(len(bounds), delta),
            coefficients=difference_coefficients(m).tolist(),
            a_const=a_const,
            b_const=config.gradient.b_const,
            x_max=r * m,
        ),
        max_qubits,
        allow_clamp,
    )
