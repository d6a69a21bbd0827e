"""
Parameterized unitaries U(x) and the analytic Hadamard-test function f(x)
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np

from operators import HermitianOperator, ObservableSet
from simcore.gates import check_unitary
from utils.config import config
from utils.errors import PlanError, RegisterError
from .ledger import ResourceLedger
from .state_prep import StatePrepOracle


class HadamardVariant(str, Enum):
    """Which part of <psi|U|psi> the ancilla-1 probability encodes"""
    IMAGINARY = "imaginary"  # with S^dagger: f = 1/2 - Im/2
    REAL = "real"            # without: f = 1/2 - Re/2


def f_from_overlap(overlap, variant: HadamardVariant = HadamardVariant.IMAGINARY):
    if HadamardVariant(variant) is HadamardVariant.IMAGINARY:
        return 0.5 - 0.5 * np.imag(overlap)
    return 0.5 - 0.5 * np.real(overlap)


@dataclass(frozen=True)
class Rotation:
    """exp(-2i x_j O) with x_j the parameter at ``index``"""
    index: int
    key: str
    operator: HermitianOperator


@dataclass(frozen=True)
class Fixed:
    """A parameter-free unitary factor"""
    label: str
    unitary: np.ndarray


Factor = Union[Rotation, Fixed]


class ParameterizedUnitary:
    """Ordered product factors[0] @ factors[1] @ ... ; the last factor acts first.

    Each of the M parameters must drive exactly one rotation factor.
    """

    def __init__(self, factors: Sequence[Factor], num_qubits: int):
        self.factors: List[Factor] = list(factors)
        self.num_qubits = int(num_qubits)
        dim = 2 ** self.num_qubits
        indices = []
        for factor in self.factors:
            if isinstance(factor, Rotation):
                if factor.operator.dimension != dim:
                    raise RegisterError(f"Rotation '{factor.key}' acts on the wrong system width")
                indices.append(factor.index)
            else:
                if factor.unitary.shape != (dim, dim):
                    raise RegisterError(f"Factor '{factor.label}' has shape {factor.unitary.shape}")
                check_unitary(factor.unitary, config.simulation.norm_tolerance, what=factor.label)
        if sorted(indices) != list(range(len(indices))):
            raise PlanError(f"Rotation parameters must be 0..M-1 exactly once, got {indices}")
        self.M = len(indices)
        self.rotations: List[Rotation] = sorted(
            (f for f in self.factors if isinstance(f, Rotation)), key=lambda f: f.index
        )

    @classmethod
    def from_observables(cls, obs_set: ObservableSet) -> "ParameterizedUnitary":
        """U(x) = prod_j exp(-2i x_j O_j) with j = 1 leftmost"""
        factors = [Rotation(index=j, key=o.id, operator=o) for j, o in enumerate(obs_set)]
        return cls(factors, obs_set.num_qubits)

    @property
    def keys(self) -> List[str]:
        return [r.key for r in self.rotations]

    def _check_x(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.M:
            raise PlanError(f"Expected {self.M} parameters, got {x.shape[-1]}")
        if not np.all(np.isfinite(x)):
            raise PlanError("Parameters must be finite")
        return x

    def factor_matrix(self, factor: Factor, x: np.ndarray) -> np.ndarray:
        if isinstance(factor, Rotation):
            return factor.operator.evolve(2.0 * x[factor.index])
        return factor.unitary

    def matrix(self, x: Sequence[float]) -> np.ndarray:
        x = self._check_x(x)
        result = np.eye(2 ** self.num_qubits, dtype=complex)
        for factor in self.factors:
            result = result @ self.factor_matrix(factor, x)
        return result

    def apply(self, x: Sequence[float], psi: np.ndarray) -> np.ndarray:
        x = self._check_x(x)
        vec = np.asarray(psi, dtype=complex).reshape(-1)
        for factor in reversed(self.factors):
            vec = self.factor_matrix(factor, x) @ vec
        return vec

    def overlaps(self, psi: np.ndarray, points: np.ndarray, chunk_size: Optional[int] = None) -> np.ndarray:
        """
        <psi|U(x)|psi> for many parameter vectors at once

        Args:
            psi: System state
            points: Array of shape (K, M)
            chunk_size: Points per batch (defaults to the configured chunk size)

        Returns:
            Complex array of length K
        """
        points = self._check_x(np.atleast_2d(points))
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        chunk_size = chunk_size or config.simulation.chunk_size
        # keep each batch near chunk_size amplitudes in total
        per_chunk = max(1, chunk_size // psi.size)
        out = np.empty(points.shape[0], dtype=complex)
        for start in range(0, points.shape[0], per_chunk):
            block = points[start:start + per_chunk]
            vecs = np.repeat(psi[:, None], block.shape[0], axis=1)
            for factor in reversed(self.factors):
                if isinstance(factor, Rotation):
                    values, basis = factor.operator.eigensystem()
                    phases = np.exp(-2j * np.outer(values, block[:, factor.index]))
                    vecs = basis @ (phases * (basis.conj().T @ vecs))
                else:
                    vecs = factor.unitary @ vecs
            out[start:start + block.shape[0]] = psi.conj() @ vecs
        return out


def build_U_of_x(obs_set: ObservableSet, x: Sequence[float]) -> np.ndarray:
    """Dense U(x) = prod_{j=1}^{M} exp(-2i x_j O_j)"""
    return ParameterizedUnitary.from_observables(obs_set).matrix(x)


def f_analytic(
    target: Union[ObservableSet, ParameterizedUnitary],
    psi_oracle: StatePrepOracle,
    x: Sequence[float],
    variant: HadamardVariant = HadamardVariant.IMAGINARY,
    ledger: Optional[ResourceLedger] = None,
) -> float:
    """
    Exact ancilla-1 probability of the Hadamard test on U(x)

    One evaluation stands for one preparation of |psi>, charged as a single
    U_psi query when a ledger is given.
    """
    unitary = _as_parameterized(target)
    psi = psi_oracle.psi
    overlap = np.vdot(psi, unitary.apply(x, psi))
    if ledger is not None:
        ledger.charge_u_psi(1)
    return float(np.clip(f_from_overlap(overlap, variant), 0.0, 1.0))


def f_batch(
    target: Union[ObservableSet, ParameterizedUnitary],
    psi: np.ndarray,
    points: np.ndarray,
    variant: HadamardVariant = HadamardVariant.IMAGINARY,
) -> np.ndarray:
    """f at every row of ``points`` (shape (K, M))"""
    overlaps = _as_parameterized(target).overlaps(psi, points)
    return f_from_overlap(overlaps, variant)


def _as_parameterized(target: Union[ObservableSet, ParameterizedUnitary]) -> ParameterizedUnitary:
    if isinstance(target, ParameterizedUnitary):
        return target
    return ParameterizedUnitary.from_observables(target)
