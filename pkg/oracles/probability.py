"""
Probability oracle U_f: the Hadamard test driven by index registers
"""
from typing import TYPE_CHECKING, Dict, List, Optional, Union

import numpy as np

from operators import ObservableSet
from simcore import H, SDG, RegisterLayout, StateVector, apply_gate, apply_hadamard_all
from utils.errors import PlanError
from utils.logger import oracle_logger
from .ledger import ResourceLedger
from .parameterized import HadamardVariant, ParameterizedUnitary, Rotation, _as_parameterized
from .state_prep import StatePrepOracle

if TYPE_CHECKING:
    from gradient.plan import GradientPlan


def index_register_names(M: int) -> List[str]:
    return [f"x{j + 1}" for j in range(M)]


def index_layout(widths) -> RegisterLayout:
    """Index registers alone, x1 on the least significant bits"""
    return RegisterLayout.from_widths(zip(index_register_names(len(widths)), widths))


def shift_angles(scale: float, n: int) -> np.ndarray:
    """Durations realizing exp(-2i (scale k) O) for k in G_n.

    Entry b < n is the angle controlled by index bit b; the last entry is the
    offset rotation for the -1/2 + 1/2^(n+1) grid shift.
    """
    bits = 2.0 * scale * 2.0 ** (np.arange(n) - n)
    offset = 2.0 * scale * (-0.5 + 1.0 / 2 ** (n + 1))
    return np.append(bits, offset)


class ProbabilityOracle:
    """U_f over index (x) ancilla (x) system for one scaled grid.

    On index basis state |k> it acts as |k> (x) F(ell r k); each rotation
    exp(-2i x_j O_j) is split into n_j doubly-controlled evolutions with
    exponentially spaced durations plus one ancilla-controlled offset.
    """

    def __init__(
        self,
        unitary: ParameterizedUnitary,
        psi_oracle: StatePrepOracle,
        plan: "GradientPlan",
        ell: int,
        variant: HadamardVariant = HadamardVariant.IMAGINARY,
    ):
        if not -plan.m <= ell <= plan.m:
            raise PlanError(f"Scale ell={ell} outside [-{plan.m}, {plan.m}]")
        if unitary.M != plan.M:
            raise PlanError(f"Plan is for M={plan.M}, unitary has {unitary.M} parameters")
        self.unitary = unitary
        self.psi_oracle = psi_oracle
        self.plan = plan
        self.ell = int(ell)
        self.variant = HadamardVariant(variant)
        self.scale = self.ell * plan.r
        self.index_names = index_register_names(plan.M)
        self.layout = RegisterLayout.from_widths(
            [("system", unitary.num_qubits), ("ancilla", 1)]
            + list(zip(self.index_names, plan.n))
        )

    def evolution_counts(self) -> Dict[str, int]:
        return {r.key: self.plan.n[r.index] for r in self.unitary.rotations}

    def evolution_durations(self) -> Dict[str, float]:
        return {
            r.key: float(np.sum(np.abs(shift_angles(self.scale, self.plan.n[r.index]))))
            for r in self.unitary.rotations
        }

    def apply(self, state: StateVector, ledger: Optional[ResourceLedger] = None) -> StateVector:
        """Apply U_f; ancilla and system must start in |0>"""
        ancilla = self.layout["ancilla"].offset
        system = self.layout["system"].qubits
        state = self.psi_oracle.apply(state, "system")
        state = apply_gate(state, H, [ancilla], check=False)
        if self.variant is HadamardVariant.IMAGINARY:
            state = apply_gate(state, SDG, [ancilla], check=False)

        for factor in reversed(self.unitary.factors):
            if not isinstance(factor, Rotation):
                state = apply_gate(state, factor.unitary, system, [ancilla], check=False)
                continue
            register = self.layout[self.index_names[factor.index]]
            angles = shift_angles(self.scale, register.width)
            state = apply_gate(state, factor.operator.evolve(angles[-1]), system, [ancilla], check=False)
            for b, qubit in enumerate(register.qubits):
                state = apply_gate(
                    state, factor.operator.evolve(angles[b]), system, [ancilla, qubit], check=False
                )

        state = apply_gate(state, H, [ancilla], check=False)
        if ledger is not None:
            ledger.charge_probability_oracle(self.evolution_counts(), self.evolution_durations())
            ledger.note_qubits(self.layout.total_width)
        return state

    def run_on_index(self, labels: Dict[str, int], ledger: Optional[ResourceLedger] = None) -> StateVector:
        """U_f applied with the index registers fixed to the given labels"""
        return self.apply(StateVector.basis(self.layout, labels), ledger)

    def readout(self, ledger: Optional[ResourceLedger] = None) -> np.ndarray:
        """
        P(ancilla = 1 | k) for every index basis state k

        The index registers are put in uniform superposition and U_f is simulated
        once; the conditional probability is read from the joint distribution.

        Returns:
            Flat array over the index layout (x1 least significant)
        """
        state = StateVector.zero(self.layout)
        for name in self.index_names:
            state = apply_hadamard_all(state, name)
        state = self.apply(state)
        probs = state.probabilities()
        system_dim = 2 ** self.layout["system"].width
        # flat index = system + 2^N * (ancilla + 2 * index)
        joint = probs.reshape(-1, 2, system_dim).sum(axis=2)
        marginal = joint.sum(axis=1)
        if ledger is not None:
            ledger.charge_extraction(circuit_readouts=1)
            ledger.note_qubits(self.layout.total_width)
        oracle_logger.debug(f"Circuit readout for ell={self.ell} on {self.layout.total_width} qubits")
        return joint[:, 1] / marginal


def build_probability_oracle(
    target: Union[ObservableSet, ParameterizedUnitary],
    psi_oracle: StatePrepOracle,
    plan: "GradientPlan",
    ell: int,
    variant: HadamardVariant = HadamardVariant.IMAGINARY,
) -> ProbabilityOracle:
    return ProbabilityOracle(_as_parameterized(target), psi_oracle, plan, ell, variant)
