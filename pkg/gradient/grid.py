"""
Points of the product grid G_{n_1} x ... x G_{n_M}
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

from simcore import grid_value


@dataclass(frozen=True)
class GridPoint:
    labels: Tuple[int, ...]
    values: Tuple[float, ...]

    @classmethod
    def from_labels(cls, labels: Sequence[int], widths: Sequence[int]) -> "GridPoint":
        labels = tuple(int(j) for j in labels)
        return cls(labels=labels, values=tuple(float(grid_value(j, n)) for j, n in zip(labels, widths)))
