"""
State-preparation oracle U_psi with invocation counters
"""
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy.linalg import null_space

from simcore import RegisterLayout, StateVector, apply_gate, apply_register_gate, check_unitary, named_gate
from utils.config import config
from utils.errors import ConfigError, GradevalError, NormalizationError, RegisterError


class StatePrepOracle:
    """Unitary U_psi over N qubits; |psi> = U_psi|0...0>.

    ``forward`` and ``inverse`` count every application made through
    :meth:`apply`. Each simulated application also reaches the ledger, as a
    U_psi query (Hadamard-test and probability-oracle runs) or as an
    extraction readout (circuit-mode phase tables).
    """

    def __init__(self, unitary: np.ndarray, name: str = "U_psi"):
        self.unitary = check_unitary(unitary, config.simulation.norm_tolerance, what=name)
        dim = self.unitary.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise RegisterError(f"{name} dimension {dim} is not a power of two >= 2")
        self.name = name
        self.forward = 0
        self.inverse = 0

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex], name: str = "U_psi") -> "StatePrepOracle":
        """Any unitary whose first column is the given (normalized) state"""
        psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) >= 1e-8:
            raise NormalizationError(f"State amplitudes have norm {norm:.10f}, expected 1")
        psi = psi / norm
        completion = null_space(psi.conj()[None, :])
        return cls(np.column_stack([psi, completion]), name=name)

    @classmethod
    def from_basis(cls, bits: str, name: str = "U_psi") -> "StatePrepOracle":
        """Basis state from a bit string listing qubit 0 first, e.g. "01" = |q0=0, q1=1>"""
        if not bits or any(b not in "01" for b in bits):
            raise RegisterError(f"Basis label must be a non-empty bit string, got '{bits}'")
        index = sum(1 << q for q, b in enumerate(bits) if b == "1")
        dim = 2 ** len(bits)
        # X on every set bit: a permutation swapping |0> and |index>
        perm = np.arange(dim) ^ index
        unitary = np.zeros((dim, dim), dtype=complex)
        unitary[perm, np.arange(dim)] = 1.0
        return cls(unitary, name=name)

    @classmethod
    def from_gates(cls, num_qubits: int, gates: List[Dict[str, Any]], name: str = "U_psi") -> "StatePrepOracle":
        """Compose named gates ``{"gate": "H", "targets": [0], "controls": []}`` in order"""
        layout = RegisterLayout.from_widths([("system", num_qubits)])
        dim = 2 ** num_qubits
        columns = []
        for col in range(dim):
            state = StateVector.basis(layout, {"system": col})
            for spec in gates:
                state = apply_gate(
                    state,
                    named_gate(spec["gate"]),
                    spec["targets"],
                    spec.get("controls", []),
                )
            columns.append(state.amplitudes)
        return cls(np.column_stack(columns), name=name)

    @classmethod
    def from_description(cls, description: Dict[str, Any], field: str = "state") -> "StatePrepOracle":
        """Build from ``{kind: basis|amplitudes|gates|unitary, ...}``"""
        if not isinstance(description, dict) or 'kind' not in description:
            raise ConfigError("expected an object with 'kind'", field)
        kind = description['kind']
        try:
            if kind == 'basis':
                return cls.from_basis(str(description['bits']))
            if kind == 'amplitudes':
                return cls.from_amplitudes(_complex_vector(description['data']))
            if kind == 'gates':
                return cls.from_gates(int(description['num_qubits']), list(description['gates']))
            if kind == 'unitary':
                data = description['data']
                if isinstance(data, dict):
                    matrix = np.asarray(data['real'], dtype=float) + 1j * np.asarray(data.get('imag', 0.0), dtype=float)
                else:
                    matrix = np.asarray(data, dtype=complex)
                return cls(matrix)
        except KeyError as e:
            raise ConfigError(f"missing {e}", field) from None
        except (GradevalError, TypeError) as e:
            raise ConfigError(str(e), field) from None
        raise ConfigError(f"unknown kind '{kind}' (expected basis, amplitudes, gates or unitary)", f"{field}.kind")

    @property
    def num_qubits(self) -> int:
        return self.unitary.shape[0].bit_length() - 1

    @property
    def psi(self) -> np.ndarray:
        """|psi> for reference computations; not counted as a query"""
        return self.unitary[:, 0].copy()

    @property
    def queries(self) -> int:
        return self.forward + self.inverse

    def apply(self, state: StateVector, register: str = "system", inverse: bool = False) -> StateVector:
        """Apply U_psi (or its adjoint) to one register of a larger state"""
        if state.layout[register].width != self.num_qubits:
            raise RegisterError(
                f"{self.name} acts on {self.num_qubits} qubits, register '{register}' has "
                f"{state.layout[register].width}"
            )
        if inverse:
            self.inverse += 1
            return apply_register_gate(state, self.unitary.conj().T, register, check=False)
        self.forward += 1
        return apply_register_gate(state, self.unitary, register, check=False)

    def reset_counters(self):
        self.forward = 0
        self.inverse = 0

    def __repr__(self) -> str:
        return f"StatePrepOracle({self.name}, qubits={self.num_qubits}, queries={self.queries})"


def _complex_vector(data: Any) -> np.ndarray:
    if isinstance(data, dict):
        real = np.asarray(data['real'], dtype=float)
        imag = np.asarray(data.get('imag', np.zeros_like(real)), dtype=float)
        return real + 1j * imag
    return np.asarray(data, dtype=complex)
