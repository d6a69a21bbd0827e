"""
Qubit registers, register layouts and the fixed-point grid encoding
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from utils.errors import RegisterError


@dataclass(frozen=True)
class QubitRegister:
    """A named block of contiguous qubits.

    Qubit b of the register is global qubit ``offset + b``; within the register
    qubit 0 is the least significant bit of the register label.
    """
    name: str
    width: int
    offset: int

    def __post_init__(self):
        if self.width < 1:
            raise RegisterError(f"Register '{self.name}' must have width >= 1, got {self.width}")
        if self.offset < 0:
            raise RegisterError(f"Register '{self.name}' has negative offset {self.offset}")

    @property
    def qubits(self) -> List[int]:
        return list(range(self.offset, self.offset + self.width))

    @property
    def dimension(self) -> int:
        return 2 ** self.width


class RegisterLayout:
    """Ordered, contiguous, non-overlapping registers.

    Global qubit q carries weight 2**q in the flat amplitude index, so the
    first declared register occupies the least significant bits.
    """

    def __init__(self, registers: Sequence[QubitRegister]):
        if not registers:
            raise RegisterError("A layout needs at least one register")
        expected = 0
        names = set()
        for reg in registers:
            if reg.offset != expected:
                raise RegisterError(
                    f"Register '{reg.name}' starts at qubit {reg.offset}, expected {expected}"
                )
            if reg.name in names:
                raise RegisterError(f"Duplicate register name '{reg.name}'")
            names.add(reg.name)
            expected += reg.width
        self.registers: Tuple[QubitRegister, ...] = tuple(registers)
        self._by_name: Dict[str, QubitRegister] = {r.name: r for r in registers}

    @classmethod
    def from_widths(cls, widths: Iterable[Tuple[str, int]]) -> "RegisterLayout":
        registers = []
        offset = 0
        for name, width in widths:
            registers.append(QubitRegister(name=name, width=int(width), offset=offset))
            offset += int(width)
        return cls(registers)

    @property
    def total_width(self) -> int:
        return sum(r.width for r in self.registers)

    @property
    def names(self) -> List[str]:
        return [r.name for r in self.registers]

    def __getitem__(self, name: str) -> QubitRegister:
        try:
            return self._by_name[name]
        except KeyError:
            raise RegisterError(f"Register '{name}' not found in layout {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(self.registers)

    def __eq__(self, other) -> bool:
        return isinstance(other, RegisterLayout) and self.registers == other.registers

    def __repr__(self) -> str:
        body = ", ".join(f"{r.name}[{r.width}]@{r.offset}" for r in self.registers)
        return f"RegisterLayout({body})"

    def label_of(self, flat_index: int, name: str) -> int:
        """Extract a register's integer label from a flat basis index"""
        reg = self[name]
        return (int(flat_index) >> reg.offset) & (reg.dimension - 1)


def grid_value(label, n: int):
    """Decode a register label j into its point of G_n: j/2^n - 1/2 + 1/2^(n+1)"""
    return label / 2 ** n - 0.5 + 1.0 / 2 ** (n + 1)


def grid_values(n: int) -> np.ndarray:
    """All points of G_n in label order"""
    return grid_value(np.arange(2 ** n, dtype=float), n)


def grid_label(value: float, n: int) -> int:
    """Inverse of grid_value, rounding to the nearest label"""
    label = int(round((value + 0.5 - 1.0 / 2 ** (n + 1)) * 2 ** n))
    if not 0 <= label < 2 ** n:
        raise RegisterError(f"Value {value} lies outside G_{n}")
    return label
