"""
Pauli-string sums: text parsing and dense conversion
"""
import re
from dataclasses import dataclass
from functools import reduce
from typing import List, Tuple

import numpy as np

from simcore.gates import I2, X, Y, Z
from utils.errors import UnitaryError

PAULI_MATRICES = {'I': I2, 'X': X, 'Y': Y, 'Z': Z}

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*\*?\s*)?
        (?P<string>[IXYZ]+)\s*""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class PauliTerm:
    """coefficient * P_0 P_1 ... with character i acting on qubit i"""
    coefficient: float
    string: str

    @property
    def num_qubits(self) -> int:
        return len(self.string)

    def matrix(self) -> np.ndarray:
        # qubit 0 is the least significant bit, so it goes last in the kron
        factors = [PAULI_MATRICES[p] for p in reversed(self.string)]
        return self.coefficient * reduce(np.kron, factors)

    def commutes_with(self, other: "PauliTerm") -> bool:
        anti = sum(
            1 for a, b in zip(self.string, other.string)
            if a != 'I' and b != 'I' and a != b
        )
        return anti % 2 == 0


def parse_pauli_sum(text: str) -> List[PauliTerm]:
    """
    Parse text like ``"1.5*XZI + 0.5*IYI - ZZZ"``

    Args:
        text: Terms ``coef*STRING`` joined by + or -; a missing coefficient is 1

    Returns:
        Terms in the order written
    """
    if not isinstance(text, str) or not text.strip():
        raise UnitaryError("Empty Pauli sum")
    terms: List[PauliTerm] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None or match.end() == pos:
            raise UnitaryError(f"Cannot parse Pauli sum at position {pos}: '{text[pos:pos + 12]}'")
        if terms and match.group('sign') is None:
            raise UnitaryError(f"Missing '+' or '-' before term at position {pos}")
        coefficient = float(match.group('coef')) if match.group('coef') else 1.0
        if match.group('sign') == '-':
            coefficient = -coefficient
        terms.append(PauliTerm(coefficient=coefficient, string=match.group('string')))
        pos = match.end()

    widths = {t.num_qubits for t in terms}
    if len(widths) != 1:
        raise UnitaryError(f"Pauli strings of different lengths in '{text}': {sorted(widths)}")
    return terms


def pauli_sum_matrix(terms: List[PauliTerm]) -> np.ndarray:
    return sum(term.matrix() for term in terms)


def pauli_sum_width(terms: List[PauliTerm]) -> int:
    return terms[0].num_qubits


def all_commute(terms: List[PauliTerm]) -> bool:
    return all(
        a.commutes_with(b)
        for i, a in enumerate(terms)
        for b in terms[i + 1:]
    )


def pauli_sum_exponential(terms: List[PauliTerm], x: float) -> np.ndarray:
    """exp(-i x sum_k c_k P_k) for mutually commuting strings.

    Each factor is cos(x c) I - i sin(x c) P since P^2 = I.
    """
    if not all_commute(terms):
        raise UnitaryError("Closed-form exponential needs mutually commuting Pauli strings")
    dim = 2 ** pauli_sum_width(terms)
    result = np.eye(dim, dtype=complex)
    for term in terms:
        unit = PauliTerm(1.0, term.string).matrix()
        angle = x * term.coefficient
        result = result @ (np.cos(angle) * np.eye(dim) - 1j * np.sin(angle) * unit)
    return result


def format_pauli_sum(terms: List[PauliTerm]) -> str:
    parts: List[Tuple[str, str]] = []
    for term in terms:
        sign = '-' if term.coefficient < 0 else '+'
        parts.append((sign, f"{abs(term.coefficient)!r}*{term.string}"))
    text = " ".join(f"{s} {body}" for s, body in parts)
    return text[2:] if text.startswith('+ ') else text
