"""Observables, Pauli sums and Hamiltonians"""

from .pauli import PauliTerm, parse_pauli_sum, pauli_sum_matrix, format_pauli_sum
from .observable import HermitianOperator, Observable, ObservableSet, evolve, spectral_norm
from .hamiltonian import Hamiltonian, time_evolution

__all__ = [
    'PauliTerm',
    'parse_pauli_sum',
    'pauli_sum_matrix',
    'format_pauli_sum',
    'HermitianOperator',
    'Observable',
    'ObservableSet',
    'evolve',
    'spectral_norm',
    'Hamiltonian',
    'time_evolution',
]
