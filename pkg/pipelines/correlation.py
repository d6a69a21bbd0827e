"""
Dynamic correlation functions C_{A_j,B}(t_j) from one gradient
"""
import time
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from operators import Hamiltonian, HermitianOperator, Observable, time_evolution
from oracles import Fixed, HadamardVariant, OracleMode, ParameterizedUnitary, Rotation, StatePrepOracle
from simcore import is_unitary
from utils.errors import ConfigError, PlanError, RegisterError, UnitaryError
from .expectation import GradientPipeline
from .report import EstimationReport


class CorrelationPart(str, Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


# part -> (Hadamard-test variant, sign applied to the gradient)
_READOUT = {
    CorrelationPart.REAL: (HadamardVariant.IMAGINARY, 1.0),
    CorrelationPart.IMAGINARY: (HadamardVariant.REAL, -1.0),
}


class CorrelationSpec:
    """H, probes A_j at nondecreasing times t_j, source B and which part of C to read"""

    def __init__(
        self,
        hamiltonian: Hamiltonian,
        probes: Sequence[Observable],
        times: Sequence[float],
        source: HermitianOperator,
        part: CorrelationPart = CorrelationPart.REAL,
    ):
        probes = list(probes)
        times = [float(t) for t in times]
        if not probes or len(probes) != len(times):
            raise PlanError(f"Need one time per probe, got {len(probes)} probes and {len(times)} times")
        if any(b < a for a, b in zip(times, times[1:])):
            raise PlanError(f"Probe times must be nondecreasing, got {times}")
        for operator, label in [(p, p.id) for p in probes] + [(source, "B")]:
            if operator.dimension != hamiltonian.dimension:
                raise RegisterError(f"Operator '{label}' does not act on the Hamiltonian's system")
            if not is_unitary(operator.matrix):
                raise UnitaryError(f"Operator '{label}' must be unitary as well as Hermitian")
        ids = [p.id for p in probes]
        if len(set(ids)) != len(ids):
            raise PlanError(f"Probe ids must be unique, got {ids}")
        self.hamiltonian = hamiltonian
        self.probes = probes
        self.times = times
        self.source = source
        self.part = CorrelationPart(part)

    @property
    def M(self) -> int:
        return len(self.probes)

    @property
    def num_qubits(self) -> int:
        return self.hamiltonian.num_qubits

    def parameterized_unitary(self) -> ParameterizedUnitary:
        """(prod_j U(t_{j-1}, t_j) exp(-2i x_j A_j)) U(t_M, t_0) B with t_0 = 0"""
        factors = []
        previous = 0.0
        for j, (probe, t) in enumerate(zip(self.probes, self.times)):
            factors.append(Fixed(f"U({previous},{t})", time_evolution(self.hamiltonian, t, previous)))
            factors.append(Rotation(index=j, key=probe.id, operator=probe))
            previous = t
        factors.append(Fixed(f"U({previous},0)", time_evolution(self.hamiltonian, 0.0, previous)))
        factors.append(Fixed("B", self.source.matrix))
        return ParameterizedUnitary(factors, self.num_qubits)

    def references(self, psi: np.ndarray) -> np.ndarray:
        """Exact C_{A_j,B}(t_j) = <psi|U(0,t) A U(t,0) B|psi>"""
        psi = np.asarray(psi, dtype=complex)
        b_psi = self.source.matrix @ psi
        values = []
        for probe, t in zip(self.probes, self.times):
            forward = time_evolution(self.hamiltonian, 0.0, t)
            values.append(np.vdot(psi, forward.conj().T @ (probe.matrix @ (forward @ b_psi))))
        return np.array(values)


class CorrelationPipeline(GradientPipeline):
    """Real or imaginary parts of all C_{A_j,B}(t_j) at once"""

    def __init__(
        self,
        spec: CorrelationSpec,
        psi_oracle: StatePrepOracle,
        epsilon: float,
        delta: float,
        mode: Optional[OracleMode] = None,
        max_qubits: Optional[int] = None,
        allow_clamp: Optional[bool] = None,
    ):
        if psi_oracle.num_qubits != spec.num_qubits:
            raise RegisterError(f"State has {psi_oracle.num_qubits} qubits, system has {spec.num_qubits}")
        variant, sign = _READOUT[spec.part]
        super().__init__(
            name="CorrelationPipeline",
            role="Dynamic correlation functions",
            unitary=spec.parameterized_unitary(),
            psi_oracle=psi_oracle,
            bounds=[1.0] * spec.M,
            epsilon=epsilon,
            delta=delta,
            mode=mode,
            variant=variant,
            max_qubits=max_qubits,
            allow_clamp=allow_clamp,
        )
        self.spec = spec
        self.sign = sign

    @property
    def convention(self) -> str:
        test = "with S^dagger" if self.variant is HadamardVariant.IMAGINARY else "without S^dagger"
        sign = "+" if self.sign > 0 else "-"
        return f"{self.spec.part.value} part = {sign}grad f, Hadamard test {test}"

    def references(self) -> np.ndarray:
        values = self.spec.references(self.psi_oracle.psi)
        return values.real if self.spec.part is CorrelationPart.REAL else values.imag

    def estimate(self, seed: int, trial: int = 0) -> EstimationReport:
        start = time.perf_counter()
        result, ledger = self.run_gradient(seed, trial)
        return self._report(
            "correlate", seed, [p.id for p in self.spec.probes],
            self.sign * result.estimate, self.references(),
            result, ledger, time.perf_counter() - start,
            convention=self.convention,
            extras={'part': self.spec.part.value, 'times': self.spec.times},
        )


def correlation_spec_from_description(description: Dict[str, Any], field: str = "correlation") -> CorrelationSpec:
    """Parse ``{hamiltonian, probes: [{id, kind, data, time}], source: {kind, data}, part}``"""
    if not isinstance(description, dict):
        raise ConfigError("expected an object", field)
    for key in ('hamiltonian', 'probes', 'source'):
        if key not in description:
            raise ConfigError(f"missing '{key}'", field)
    hamiltonian = Hamiltonian.from_description(description['hamiltonian'], f"{field}.hamiltonian")
    probes: List[Observable] = []
    times: List[float] = []
    raw_probes = description['probes']
    if not isinstance(raw_probes, list) or not raw_probes:
        raise ConfigError("expected a non-empty list", f"{field}.probes")
    for i, probe in enumerate(raw_probes):
        where = f"{field}.probes[{i}]"
        if not isinstance(probe, dict) or 'time' not in probe:
            raise ConfigError("each probe needs a 'time'", where)
        probes.append(Observable.from_description({**probe, 'norm_bound': 1.0}, where))
        times.append(float(probe['time']))
    source = HermitianOperator.from_description(description['source'], f"{field}.source")
    try:
        return CorrelationSpec(hamiltonian, probes, times, source, description.get('part', 'real'))
    except (PlanError, UnitaryError, RegisterError) as e:
        raise ConfigError(str(e), field) from None
    except ValueError as e:
        raise ConfigError(str(e), f"{field}.part") from None


def estimate_correlations(
    spec: CorrelationSpec,
    psi_oracle: StatePrepOracle,
    epsilon: float,
    delta: float,
    mode: Optional[OracleMode] = None,
    seed: int = 0,
    **kwargs,
) -> EstimationReport:
    pipeline = CorrelationPipeline(spec, psi_oracle, epsilon, delta, mode, **kwargs)
    return pipeline.run({'seed': seed})['report']
