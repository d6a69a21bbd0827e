"""
Quantum Fourier transform over the centred grid G_n
"""
import numpy as np

from utils.logger import sim_logger
from .registers import grid_values
from .state import StateVector


def qft_matrix(n: int, inverse: bool = False) -> np.ndarray:
    """Explicit transform with elements 2^{-n/2} exp(+-2 pi i 2^n x k), x, k in G_n.

    Rows are indexed by the output label k, columns by the input label x.
    """
    points = grid_values(n)
    sign = -1.0 if inverse else 1.0
    kernel = np.exp(sign * 2j * np.pi * 2 ** n * np.outer(points, points))
    return kernel / np.sqrt(2 ** n)


def _transform(state: StateVector, register: str, inverse: bool) -> StateVector:
    reg = state.layout[register]
    dim = reg.dimension
    out = state.copy()
    view = out.register_view(register)

    # 2^n x_j k_l = (j - c)(l - c)/2^n with c = (2^n - 1)/2, so the kernel is an
    # ordinary DFT sandwiched between two diagonal phase layers
    centre = (dim - 1) / 2.0
    labels = np.arange(dim)
    sign = -1.0 if inverse else 1.0
    twist = np.exp(-sign * 2j * np.pi * centre * labels / dim)
    offset = np.exp(sign * 2j * np.pi * centre * centre / dim)

    shifted = view * twist[None, :, None]
    if inverse:
        spectrum = np.fft.fft(shifted, axis=1) / np.sqrt(dim)
    else:
        spectrum = np.fft.ifft(shifted, axis=1) * np.sqrt(dim)
    view[...] = spectrum * (twist * offset)[None, :, None]
    sim_logger.debug(f"{'Inverse' if inverse else 'Forward'} QFT on '{register}' ({reg.width} qubits)")
    return out


def apply_qft_inverse(state: StateVector, register: str) -> StateVector:
    """Inverse QFT on one register; other registers are untouched"""
    return _transform(state, register, inverse=True)


def apply_qft(state: StateVector, register: str) -> StateVector:
    """Forward QFT on one register"""
    return _transform(state, register, inverse=False)
