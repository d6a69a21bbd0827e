"""
Hard instances: states whose Z-expectations encode a signed mixture A p
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from operators import Observable, ObservableSet
from oracles import OracleMode, StatePrepOracle
from utils.errors import PlanError
from utils.logger import pipeline_logger
from .base_pipeline import BasePipeline
from .expectation import ExpectationPipeline
from .report import EstimationReport


@dataclass
class LowerBoundInstance:
    """
    Registers inside the system, lowest qubits first: M sign qubits, an index
    register of ceil(log2 M) qubits, and one purification qubit.
    """
    A: np.ndarray
    p: np.ndarray
    psi_oracle: StatePrepOracle
    observables: ObservableSet
    index_width: int

    @property
    def M(self) -> int:
        return self.A.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.M + self.index_width + 1

    def targets(self) -> np.ndarray:
        """A p"""
        return self.A @ self.p

    def expectations(self) -> np.ndarray:
        """<Z_i> in the constructed state"""
        return self.observables.expectations(self.psi_oracle.psi)

    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.targets() - self.expectations())))


def _sign_unitary(A: np.ndarray, index_width: int) -> np.ndarray:
    """U_A = sum_j (prod_i X_i^[A_ij = -1]) (x) |j><j| (x) I, identity for j >= M"""
    M = A.shape[0]
    dim = 2 ** (M + index_width + 1)
    flat = np.arange(dim)
    j = (flat >> M) & ((1 << index_width) - 1)
    masks = np.zeros(2 ** index_width, dtype=np.int64)
    for col in range(M):
        masks[col] = sum(1 << i for i in range(M) if A[i, col] == -1)
    target = flat ^ masks[j]
    unitary = np.zeros((dim, dim), dtype=complex)
    unitary[target, flat] = 1.0
    return unitary


def build_lowerbound_instance(A, p) -> LowerBoundInstance:
    """
    Construct U_psi = U_A (I (x) U_p) with U_p|0>|0> = sum_j sqrt(p_j)|j>|0>

    Args:
        A: M x M matrix with entries +-1
        p: Probability vector of length M

    Returns:
        Instance whose Z_i expectations equal (A p)_i
    """
    A = np.asarray(A, dtype=float)
    p = np.asarray(p, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise PlanError(f"Sign matrix must be square, got shape {A.shape}")
    if not np.all(np.isin(A, (-1.0, 1.0))):
        raise PlanError("Sign matrix entries must be +1 or -1")
    M = A.shape[0]
    if p.shape != (M,):
        raise PlanError(f"Probability vector must have length {M}, got shape {p.shape}")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise PlanError(f"p must be non-negative and sum to 1, got sum {p.sum():.15f}")

    index_width = max(1, math.ceil(math.log2(M)))
    # index (low) and purification (high) qubits; phi_j = |0>
    branch = np.zeros(2 ** (index_width + 1), dtype=complex)
    branch[:M] = np.sqrt(p)
    prep = StatePrepOracle.from_amplitudes(branch, name="U_p")
    unitary = _sign_unitary(A, index_width) @ np.kron(prep.unitary, np.eye(2 ** M))
    psi_oracle = StatePrepOracle(unitary, name="U_psi(U_p)")

    width = M + index_width + 1
    observables = ObservableSet([
        Observable(f"Z{i + 1}", "".join("Z" if q == i else "I" for q in range(width)))
        for i in range(M)
    ])
    pipeline_logger.debug(f"Lower-bound instance: M={M}, {width} system qubits")
    return LowerBoundInstance(A=A, p=p, psi_oracle=psi_oracle, observables=observables, index_width=index_width)


class FixturePipeline(BasePipeline):
    """Checks the A p identity and optionally estimates it end to end"""

    def __init__(self, instance: LowerBoundInstance):
        super().__init__(name="FixturePipeline", role="Lower-bound instance check")
        self.instance = instance

    def estimator(
        self,
        epsilon: float,
        delta: float,
        mode: Optional[OracleMode] = None,
        **kwargs,
    ) -> ExpectationPipeline:
        return ExpectationPipeline(
            self.instance.observables, self.instance.psi_oracle, epsilon, delta, mode, **kwargs
        )

    def execute(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        deviation = self.instance.max_deviation()
        pipeline_logger.info(f"Fixture identity: max |(Ap)_i - <Z_i>| = {deviation:.3e}")
        results: Dict[str, Any] = {
            'targets': self.instance.targets().tolist(),
            'expectations': self.instance.expectations().tolist(),
            'max_deviation': deviation,
        }
        if inputs.get('estimate', False):
            pipeline = self.estimator(
                inputs['epsilon'], inputs['delta'], inputs.get('mode'),
                max_qubits=inputs.get('max_qubits'), allow_clamp=inputs.get('allow_clamp'),
            )
            report: EstimationReport = pipeline.estimate(int(inputs['seed']))
            report.task = "fixture"
            report.extras.update({
                'max_deviation': deviation,
                'A': self.instance.A.tolist(),
                'p': self.instance.p.tolist(),
            })
            results['report'] = report
        return results
