"""
Hadamard-test circuit F(x) on ancilla (x) system
"""
from typing import Optional, Sequence, Union

import numpy as np

from operators import ObservableSet
from simcore import H, SDG, RegisterLayout, StateVector, apply_gate
from .ledger import ResourceLedger
from .parameterized import HadamardVariant, ParameterizedUnitary, _as_parameterized
from .state_prep import StatePrepOracle


class HadamardTest:
    """F(x) = (H (x) I) c-U(x) (S^dagger H (x) U_psi), controlled on the ancilla.

    The REAL variant drops S^dagger.
    """

    def __init__(
        self,
        unitary: ParameterizedUnitary,
        psi_oracle: StatePrepOracle,
        x: Sequence[float],
        variant: HadamardVariant = HadamardVariant.IMAGINARY,
    ):
        self.unitary = unitary
        self.psi_oracle = psi_oracle
        self.x = np.asarray(x, dtype=float)
        self.variant = HadamardVariant(variant)
        self.layout = RegisterLayout.from_widths([("system", unitary.num_qubits), ("ancilla", 1)])

    def run(self, ledger: Optional[ResourceLedger] = None) -> StateVector:
        """Apply F(x) to |0>|0...0>"""
        ancilla = self.layout["ancilla"].offset
        system = self.layout["system"].qubits
        state = StateVector.zero(self.layout)
        state = self.psi_oracle.apply(state, "system")
        state = apply_gate(state, H, [ancilla], check=False)
        if self.variant is HadamardVariant.IMAGINARY:
            state = apply_gate(state, SDG, [ancilla], check=False)
        for factor in reversed(self.unitary.factors):
            state = apply_gate(
                state, self.unitary.factor_matrix(factor, self.x), system, [ancilla], check=False
            )
        state = apply_gate(state, H, [ancilla], check=False)
        if ledger is not None:
            ledger.charge_u_psi(1)
            ledger.note_qubits(self.layout.total_width)
        return state

    def probability_one(self, ledger: Optional[ResourceLedger] = None) -> float:
        """Probability of reading 1 on the ancilla"""
        return float(self.run(ledger).probabilities("ancilla")[1])


def build_F(
    target: Union[ObservableSet, ParameterizedUnitary],
    psi_oracle: StatePrepOracle,
    x: Sequence[float],
    variant: HadamardVariant = HadamardVariant.IMAGINARY,
) -> HadamardTest:
    return HadamardTest(_as_parameterized(target), psi_oracle, x, variant)
