"""
Dense state vectors, gate application and computational-basis measurement
"""
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Union

import numpy as np

from utils.config import config
from utils.errors import NormalizationError, RegisterError
from utils.logger import sim_logger
from .gates import check_unitary
from .registers import RegisterLayout, grid_value
from .rng import RngStream

RandomSource = Union[RngStream, np.random.Generator]


def as_generator(rng: RandomSource) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng


class StateVector:
    """Amplitudes over a register layout.

    The flat amplitude index carries global qubit q at weight 2**q.
    """

    def __init__(self, amplitudes: np.ndarray, layout: RegisterLayout, check: bool = True):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != 2 ** layout.total_width:
            raise RegisterError(
                f"Expected {2 ** layout.total_width} amplitudes for {layout}, got {amplitudes.size}"
            )
        self.amplitudes = amplitudes
        self.layout = layout
        if check:
            self.check_norm(config.simulation.norm_tolerance)

    @classmethod
    def zero(cls, layout: RegisterLayout) -> "StateVector":
        amplitudes = np.zeros(2 ** layout.total_width, dtype=complex)
        amplitudes[0] = 1.0
        return cls(amplitudes, layout, check=False)

    @classmethod
    def basis(cls, layout: RegisterLayout, labels: Dict[str, int]) -> "StateVector":
        """Computational basis state with the given register labels (others 0)"""
        index = 0
        for name, label in labels.items():
            reg = layout[name]
            if not 0 <= label < reg.dimension:
                raise RegisterError(f"Label {label} out of range for register '{name}'")
            index |= int(label) << reg.offset
        amplitudes = np.zeros(2 ** layout.total_width, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes, layout, check=False)

    @classmethod
    def tensor(cls, layout: RegisterLayout, parts: Dict[str, np.ndarray]) -> "StateVector":
        """Product state from one vector per register (missing registers in |0>)"""
        amplitudes = np.ones(1, dtype=complex)
        # kron places its first argument on the most significant bits
        for reg in layout.registers:
            part = parts.get(reg.name)
            if part is None:
                part = np.zeros(reg.dimension, dtype=complex)
                part[0] = 1.0
            part = np.asarray(part, dtype=complex).reshape(-1)
            if part.size != reg.dimension:
                raise RegisterError(
                    f"Register '{reg.name}' expects {reg.dimension} amplitudes, got {part.size}"
                )
            amplitudes = np.kron(part, amplitudes)
        return cls(amplitudes, layout)

    @property
    def num_qubits(self) -> int:
        return self.layout.total_width

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def check_norm(self, tol: float):
        deviation = abs(self.norm_squared() - 1.0)
        if deviation >= tol:
            sim_logger.error(f"Norm check failed on {self.num_qubits} qubits: deviation {deviation:.3e}")
            raise NormalizationError(f"State norm deviates from 1 by {deviation:.3e}")

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.layout, check=False)

    def register_view(self, name: str) -> np.ndarray:
        """Amplitudes reshaped to (high, register, low); a view, not a copy"""
        reg = self.layout[name]
        high = 2 ** (self.num_qubits - reg.offset - reg.width)
        return self.amplitudes.reshape(high, reg.dimension, 2 ** reg.offset)

    def probabilities(self, name: Optional[str] = None) -> np.ndarray:
        """Outcome distribution, marginal on one register if a name is given"""
        probs = np.abs(self.amplitudes) ** 2
        if name is None:
            return probs
        reg = self.layout[name]
        high = 2 ** (self.num_qubits - reg.offset - reg.width)
        return probs.reshape(high, reg.dimension, 2 ** reg.offset).sum(axis=(0, 2))

    def __repr__(self) -> str:
        return f"StateVector({self.layout}, norm^2={self.norm_squared():.12f})"


def _check_qubits(state: StateVector, targets: Sequence[int], controls: Sequence[int]):
    n = state.num_qubits
    everything = list(targets) + list(controls)
    if len(set(everything)) != len(everything):
        raise RegisterError(f"Overlapping qubit indices: targets={list(targets)} controls={list(controls)}")
    for q in everything:
        if not 0 <= q < n:
            raise RegisterError(f"Qubit {q} out of range for a {n}-qubit state")


def apply_gate(
    state: StateVector,
    gate: np.ndarray,
    targets: Sequence[int],
    controls: Sequence[int] = (),
    check: bool = True,
) -> StateVector:
    """
    Apply a (multi-)controlled unitary to a state

    Args:
        state: Input state (left untouched)
        gate: 2^k x 2^k unitary; targets[0] is the least significant bit of its index
        targets: Target qubits
        controls: Control qubits, all of which must be 1 for the gate to act
        check: Verify unitarity of the gate

    Returns:
        New state
    """
    targets = [int(q) for q in targets]
    controls = [int(q) for q in controls]
    if not targets:
        raise RegisterError("apply_gate needs at least one target qubit")
    _check_qubits(state, targets, controls)
    gate = np.asarray(gate, dtype=complex)
    dim = 2 ** len(targets)
    if gate.shape != (dim, dim):
        raise RegisterError(f"Gate of shape {gate.shape} does not match {len(targets)} target qubit(s)")
    if check:
        check_unitary(gate, config.simulation.norm_tolerance)

    n = state.num_qubits
    out = state.amplitudes.copy()
    tensor = out.reshape([2] * n)
    # C order: axis a holds qubit n-1-a, so the last target leads the gate index
    control_axes = [n - 1 - q for q in controls]
    target_axes = [n - 1 - q for q in reversed(targets)]
    moved = np.moveaxis(tensor, control_axes + target_axes, list(range(len(control_axes) + len(target_axes))))
    block = moved[(1,) * len(control_axes)]
    flat = block.reshape(dim, -1)
    block[...] = (gate @ flat).reshape(block.shape)
    return StateVector(out, state.layout, check=False)


def apply_register_gate(
    state: StateVector,
    gate: np.ndarray,
    register: str,
    controls: Sequence[int] = (),
    check: bool = True,
) -> StateVector:
    """Apply a unitary on a whole register (register label is the gate index)"""
    return apply_gate(state, gate, state.layout[register].qubits, controls, check=check)


def apply_hadamard_all(state: StateVector, register: str) -> StateVector:
    """H on every qubit of a register, as one vectorized transform"""
    reg = state.layout[register]
    out = state.copy()
    high = 2 ** (state.num_qubits - reg.offset - reg.width)
    low = 2 ** reg.offset
    for b in range(reg.width):
        pairs = out.amplitudes.reshape(high, reg.dimension >> (b + 1), 2, 1 << b, low)
        x0 = pairs[:, :, 0].copy()
        x1 = pairs[:, :, 1].copy()
        pairs[:, :, 0] = (x0 + x1) / np.sqrt(2)
        pairs[:, :, 1] = (x0 - x1) / np.sqrt(2)
    return out


def measure_shots(state: StateVector, rng: RandomSource, shots: int) -> np.ndarray:
    """Flat basis indices of independent computational-basis samples"""
    probs = state.probabilities()
    total = probs.sum()
    if abs(total - 1.0) > config.simulation.measure_tolerance:
        sim_logger.error(f"Refusing to measure a state with norm^2 {total:.12f}")
        raise NormalizationError(f"Cannot measure: norm^2 = {total:.12f}")
    cumulative = np.cumsum(probs)
    draws = as_generator(rng).random(shots) * cumulative[-1]
    return np.minimum(np.searchsorted(cumulative, draws, side="right"), probs.size - 1)


@dataclass(frozen=True)
class RegisterOutcome:
    label: int
    value: float


def measure_all(state: StateVector, rng: RandomSource) -> Dict[str, RegisterOutcome]:
    """
    Measure every qubit in the computational basis

    Returns:
        Per register the integer label and its G_n decoding
    """
    index = int(measure_shots(state, rng, 1)[0])
    outcome = {}
    for reg in state.layout.registers:
        label = state.layout.label_of(index, reg.name)
        outcome[reg.name] = RegisterOutcome(label=label, value=float(grid_value(label, reg.width)))
    return outcome
