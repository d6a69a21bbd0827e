"""
Hermitian operators with declared norm bounds
"""
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from utils.config import config
from utils.errors import BudgetError, ConfigError, PlanError, UnitaryError
from .pauli import (
    PauliTerm,
    all_commute,
    format_pauli_sum,
    parse_pauli_sum,
    pauli_sum_exponential,
    pauli_sum_matrix,
)

Body = Union[np.ndarray, str, Sequence[PauliTerm]]


def _dense_from_data(data: Any, field: str) -> np.ndarray:
    """Dense matrices in JSON: a real nested list or {"real": ..., "imag": ...}"""
    try:
        if isinstance(data, dict):
            real = np.asarray(data.get('real', 0.0), dtype=float)
            imag = np.asarray(data.get('imag', np.zeros_like(real)), dtype=float)
            return real + 1j * imag
        return np.asarray(data, dtype=complex)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"not a numeric matrix ({e})", field) from None


def _body_from_description(description: Dict[str, Any], field: str) -> Body:
    kind = description["kind"]
    if kind == "pauli":
        if not isinstance(description["data"], str):
            raise ConfigError("pauli data must be a string like '1.5*XZ + 0.5*IY'", f"{field}.data")
        return description["data"]
    if kind == "dense":
        return _dense_from_data(description["data"], f"{field}.data")
    raise ConfigError(f"unknown kind '{kind}' (expected 'dense' or 'pauli')", f"{field}.kind")


class HermitianOperator:
    """A Hermitian operator held densely, optionally remembering its Pauli terms.

    Instances are treated as immutable; the eigendecomposition is computed
    lazily and cached.
    """

    def __init__(self, body: Body):
        self.terms: Optional[List[PauliTerm]] = None
        if isinstance(body, str):
            self.terms = parse_pauli_sum(body)
        elif isinstance(body, (list, tuple)) and body and isinstance(body[0], PauliTerm):
            self.terms = list(body)

        if self.terms is not None:
            width = self.terms[0].num_qubits
            self._check_cap(width)
            matrix = pauli_sum_matrix(self.terms)
        else:
            matrix = np.array(body, dtype=complex)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise UnitaryError(f"Operator must be a square matrix, got shape {matrix.shape}")
            dim = matrix.shape[0]
            if dim < 2 or dim & (dim - 1):
                raise UnitaryError(f"Operator dimension {dim} is not a power of two >= 2")
            self._check_cap(dim.bit_length() - 1)

        defect = float(np.max(np.abs(matrix - matrix.conj().T)))
        if defect >= 1e-10:
            raise UnitaryError(f"Operator is not Hermitian (max |O - O^dagger| = {defect:.3e})")
        self.matrix = matrix
        self.matrix.setflags(write=False)
        self._eig: Optional[Tuple[np.ndarray, np.ndarray]] = None

    @classmethod
    def from_description(cls, description: Dict[str, Any], field: str = "operator"):
        """Build from ``{kind: "dense"|"pauli", data}``"""
        if not isinstance(description, dict) or "kind" not in description or "data" not in description:
            raise ConfigError("expected an object with kind and data", field)
        try:
            return cls(_body_from_description(description, field))
        except (UnitaryError, BudgetError) as e:
            raise ConfigError(str(e), field) from None

    @staticmethod
    def _check_cap(width: int):
        cap = config.simulation.dense_cap_qubits
        if width > cap:
            raise BudgetError(f"Operator on {width} qubits exceeds the dense cap of {cap} qubits")

    @property
    def num_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def eigensystem(self) -> Tuple[np.ndarray, np.ndarray]:
        """(eigenvalues, eigenvectors as columns)"""
        if self._eig is None:
            values, vectors = np.linalg.eigh(self.matrix)
            self._eig = (values, vectors)
        return self._eig

    def spectral_norm(self) -> float:
        values, _ = self.eigensystem()
        return float(np.max(np.abs(values)))

    def evolve(self, x: float) -> np.ndarray:
        """exp(-i x O)"""
        if not np.isfinite(x):
            raise PlanError(f"Evolution duration must be finite, got {x}")
        if self.terms is not None and all_commute(self.terms):
            return pauli_sum_exponential(self.terms, x)
        values, vectors = self.eigensystem()
        return (vectors * np.exp(-1j * x * values)) @ vectors.conj().T

    def expectation(self, psi: np.ndarray) -> float:
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        return float(np.vdot(psi, self.matrix @ psi).real)

    def describe_body(self) -> Dict[str, Any]:
        if self.terms is not None:
            return {'kind': 'pauli', 'data': format_pauli_sum(self.terms)}
        return {
            'kind': 'dense',
            'data': {'real': self.matrix.real.tolist(), 'imag': self.matrix.imag.tolist()},
        }


class Observable(HermitianOperator):
    """Hermitian observable O_j with a user-declared bound B_j >= ||O_j||"""

    def __init__(self, id: str, body: Body, norm_bound: float = 1.0):
        super().__init__(body)
        if not norm_bound > 0:
            raise PlanError(f"Observable '{id}': norm_bound must be positive, got {norm_bound}")
        self.id = str(id)
        self.norm_bound = float(norm_bound)
        norm = self.spectral_norm()
        if norm > self.norm_bound + 1e-9:
            raise PlanError(
                f"Observable '{id}': spectral norm {norm:.6f} exceeds declared bound {self.norm_bound}"
            )

    @classmethod
    def from_description(cls, description: Dict[str, Any], field: str = "observable") -> "Observable":
        """Build from ``{id, kind: "dense"|"pauli", data, norm_bound}``"""
        if not isinstance(description, dict):
            raise ConfigError("expected an object with id, kind, data, norm_bound", field)
        for key in ('id', 'kind', 'data'):
            if key not in description:
                raise ConfigError(f"missing '{key}'", field)
        body = _body_from_description(description, field)
        try:
            return cls(description['id'], body, float(description.get('norm_bound', 1.0)))
        except (UnitaryError, PlanError, BudgetError) as e:
            raise ConfigError(str(e), field) from None

    def to_description(self) -> Dict[str, Any]:
        return {'id': self.id, **self.describe_body(), 'norm_bound': self.norm_bound}

    def scaled(self, factor: float, id: Optional[str] = None) -> "Observable":
        """factor * O with the bound scaled by |factor|"""
        if self.terms is not None:
            body: Body = [PauliTerm(t.coefficient * factor, t.string) for t in self.terms]
        else:
            body = self.matrix * factor
        return Observable(id or self.id, body, self.norm_bound * abs(factor))

    def __repr__(self) -> str:
        return f"Observable(id={self.id!r}, qubits={self.num_qubits}, norm_bound={self.norm_bound})"


def evolve(obs: HermitianOperator, x: float) -> np.ndarray:
    """Unitary exp(-i x O)"""
    return obs.evolve(x)


def spectral_norm(obs: HermitianOperator) -> float:
    """Largest |eigenvalue|"""
    return obs.spectral_norm()


class ObservableSet:
    """Ordered observables O_1..O_M acting on one N-qubit system"""

    def __init__(self, observables: Sequence[Observable]):
        observables = list(observables)
        if not observables:
            raise PlanError("An observable set needs at least one observable")
        ids = [o.id for o in observables]
        if len(set(ids)) != len(ids):
            raise PlanError(f"Observable ids must be unique, got {ids}")
        widths = {o.num_qubits for o in observables}
        if len(widths) != 1:
            raise PlanError(f"Observables act on different system widths: {sorted(widths)}")
        self.observables = observables

    @classmethod
    def from_descriptions(cls, descriptions: Sequence[Dict[str, Any]]) -> "ObservableSet":
        if not isinstance(descriptions, (list, tuple)) or not descriptions:
            raise ConfigError("expected a non-empty list", "observables")
        return cls([
            Observable.from_description(d, f"observables[{i}]")
            for i, d in enumerate(descriptions)
        ])

    @property
    def M(self) -> int:
        return len(self.observables)

    @property
    def num_qubits(self) -> int:
        return self.observables[0].num_qubits

    @property
    def ids(self) -> List[str]:
        return [o.id for o in self.observables]

    @property
    def bounds(self) -> np.ndarray:
        return np.array([o.norm_bound for o in self.observables])

    @property
    def unit_bounds(self) -> bool:
        """True when every declared bound is exactly 1"""
        return bool(np.all(self.bounds == 1.0))

    def expectations(self, psi: np.ndarray) -> np.ndarray:
        return np.array([o.expectation(psi) for o in self.observables])

    def __len__(self) -> int:
        return self.M

    def __iter__(self) -> Iterator[Observable]:
        return iter(self.observables)

    def __getitem__(self, index: int) -> Observable:
        return self.observables[index]
