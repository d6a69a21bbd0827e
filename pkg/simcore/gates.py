"""
Elementary gate matrices and unitarity checks
"""
import numpy as np

from utils.errors import UnitaryError

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
SDG = S.conj().T
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)

GATE_TYPES = {
    'I': I2,
    'X': X,
    'Y': Y,
    'Z': Z,
    'H': H,
    'S': S,
    'SDG': SDG,
    'T': T,
}


def unitarity_defect(matrix: np.ndarray) -> float:
    """max |(U U^dagger - I)_ij|"""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(matrix.shape[0]))))


def is_unitary(matrix: np.ndarray, tol: float = 1e-10) -> bool:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    return unitarity_defect(matrix) < tol


def check_unitary(matrix: np.ndarray, tol: float = 1e-10, what: str = "gate") -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise UnitaryError(f"{what} must be a square matrix, got shape {matrix.shape}")
    defect = unitarity_defect(matrix)
    if defect >= tol:
        raise UnitaryError(f"{what} is not unitary (defect {defect:.3e})")
    return matrix


def rotation(pauli: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i angle P) for a Pauli matrix P"""
    return np.cos(angle) * I2 - 1j * np.sin(angle) * pauli


def named_gate(name: str) -> np.ndarray:
    try:
        return GATE_TYPES[name.upper()]
    except KeyError:
        raise UnitaryError(f"Unknown gate '{name}'; known gates: {sorted(GATE_TYPES)}") from None
