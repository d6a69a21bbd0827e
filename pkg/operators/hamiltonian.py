"""
Time-independent Hamiltonians and their evolution operators
"""
import numpy as np

from .observable import Body, HermitianOperator


class Hamiltonian(HermitianOperator):
    """System Hamiltonian H; U(t, t') = exp(-i H (t - t'))"""

    def __init__(self, body: Body):
        super().__init__(body)

    def __repr__(self) -> str:
        return f"Hamiltonian(qubits={self.num_qubits})"


def time_evolution(h: Hamiltonian, t_from: float, t_to: float) -> np.ndarray:
    """Propagator taking the system from t_from to t_to"""
    return h.evolve(t_to - t_from)
