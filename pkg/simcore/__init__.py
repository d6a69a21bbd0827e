"""Dense state-vector simulation engine"""

from .registers import QubitRegister, RegisterLayout, grid_value, grid_values, grid_label
from .gates import GATE_TYPES, I2, X, Y, Z, H, S, SDG, T, is_unitary, check_unitary, named_gate
from .rng import RngStream, streams
from .state import (
    StateVector,
    RegisterOutcome,
    apply_gate,
    apply_register_gate,
    apply_hadamard_all,
    measure_all,
    measure_shots,
    as_generator,
)
from .qft import qft_matrix, apply_qft, apply_qft_inverse

__all__ = [
    'QubitRegister',
    'RegisterLayout',
    'grid_value',
    'grid_values',
    'grid_label',
    'GATE_TYPES',
    'I2', 'X', 'Y', 'Z', 'H', 'S', 'SDG', 'T',
    'is_unitary',
    'check_unitary',
    'named_gate',
    'RngStream',
    'streams',
    'StateVector',
    'RegisterOutcome',
    'apply_gate',
    'apply_register_gate',
    'apply_hadamard_all',
    'measure_all',
    'measure_shots',
    'as_generator',
    'qft_matrix',
    'apply_qft',
    'apply_qft_inverse',
]
