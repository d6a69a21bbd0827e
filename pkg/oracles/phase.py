"""
Idealized phase oracle O_h^power built from probability-oracle readouts
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Callable, Dict, Optional, Tuple, Union

import numpy as np

from operators import ObservableSet
from simcore import StateVector
from simcore.state import RandomSource, as_generator
from utils.errors import PlanError, RegisterError
from utils.logger import oracle_logger
from .ledger import ResourceLedger, conversion_multiplier
from .parameterized import HadamardVariant, ParameterizedUnitary, _as_parameterized, f_batch
from .probability import ProbabilityOracle, index_layout, index_register_names, shift_angles
from .state_prep import StatePrepOracle

if TYPE_CHECKING:
    from gradient.plan import GradientPlan


class OracleKind(str, Enum):
    ANALYTIC = "analytic"
    CIRCUIT = "circuit"


@dataclass(frozen=True)
class OracleMode:
    """How f is read out, and the injected conversion error eps'"""
    kind: OracleKind = OracleKind.ANALYTIC
    phase_error: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'kind', OracleKind(self.kind))
        if not 0.0 <= self.phase_error < 1.0 / 3.0:
            raise PlanError(f"phase_error must lie in [0, 1/3), got {self.phase_error}")


def grid_points(plan: "GradientPlan") -> np.ndarray:
    """G_{n_1} x ... x G_{n_M} as rows, in flat index-layout order"""
    layout = index_layout(plan.n)
    flat = np.arange(2 ** layout.total_width)
    columns = []
    for reg in layout:
        labels = (flat >> reg.offset) & (reg.dimension - 1)
        columns.append(labels / reg.dimension - 0.5 + 0.5 / reg.dimension)
    return np.column_stack(columns)


def phase_query_cost(plan: "GradientPlan", power: float) -> Tuple[int, int]:
    """
    Cost of one phase-oracle application at ``power``

    Returns:
        (unit phase queries ceil(power * sum|a_ell| / 2 pi),
         probability-oracle invocations per unit query)
    """
    units = max(0, math.ceil(abs(power) * plan.coefficient_l1() / (2 * np.pi) - 1e-9))
    multiplier = conversion_multiplier(plan.T * max(1, units), plan.epsilon)
    return units, multiplier


class PhaseOracle:
    """
    Phase table h(k) = sum_ell a_ell f(ell r k) over the index grid

    Applying the oracle at ``power`` multiplies |k> by exp(i power h(k)). The
    probability-to-phase conversion is idealized; its error eps' is injectable
    and its query cost is charged through the conversion multiplier.
    """

    def __init__(
        self,
        plan: "GradientPlan",
        table: np.ndarray,
        mode: OracleMode,
        evolution_counts: Dict[str, int],
        evolution_durations: Dict[str, float],
    ):
        self.plan = plan
        self.layout = index_layout(plan.n)
        table = np.asarray(table, dtype=float).reshape(-1)
        if table.size != 2 ** self.layout.total_width:
            raise RegisterError(f"Phase table has {table.size} entries, index grid has {2 ** self.layout.total_width}")
        self.table = table
        self.mode = mode
        self.evolution_counts = evolution_counts
        self.evolution_durations = evolution_durations

    @classmethod
    def build(
        cls,
        target: Union[ObservableSet, ParameterizedUnitary],
        psi_oracle: StatePrepOracle,
        plan: "GradientPlan",
        mode: Optional[OracleMode] = None,
        variant: HadamardVariant = HadamardVariant.IMAGINARY,
        ledger: Optional[ResourceLedger] = None,
    ) -> "PhaseOracle":
        """Phase oracle for the Hadamard-test function of U(x) and |psi>"""
        mode = mode or OracleMode()
        unitary = _as_parameterized(target)
        points = grid_points(plan)
        table = np.zeros(points.shape[0])
        weights = {}
        for ell, a in plan.nonzero_coefficients():
            if mode.kind is OracleKind.ANALYTIC:
                values = f_batch(unitary, psi_oracle.psi, ell * plan.r * points, variant)
                if ledger is not None:
                    ledger.charge_extraction(f_evaluations=points.shape[0])
            else:
                oracle = ProbabilityOracle(unitary, psi_oracle, plan, ell, variant)
                values = oracle.readout(ledger)
            table += a * values
            weights[ell] = abs(a)
        oracle_logger.info(
            f"Built {mode.kind.value} phase table over {points.shape[0]} grid points "
            f"({len(weights)} scaled grids)"
        )
        counts = {r.key: plan.n[r.index] for r in unitary.rotations}
        durations = {
            r.key: _weighted_duration(plan, weights, plan.n[r.index]) for r in unitary.rotations
        }
        return cls(plan, table, mode, counts, durations)

    @classmethod
    def from_function(
        cls,
        plan: "GradientPlan",
        func: Callable[[np.ndarray], np.ndarray],
        mode: Optional[OracleMode] = None,
    ) -> "PhaseOracle":
        """Phase oracle for an arbitrary f given as a vectorized function of (K, M) points"""
        points = grid_points(plan)
        table = np.zeros(points.shape[0])
        weights = {}
        for ell, a in plan.nonzero_coefficients():
            table += a * np.asarray(func(ell * plan.r * points), dtype=float)
            weights[ell] = abs(a)
        names = index_register_names(plan.M)
        counts = {name: plan.n[i] for i, name in enumerate(names)}
        durations = {name: _weighted_duration(plan, weights, plan.n[i]) for i, name in enumerate(names)}
        return cls(plan, table, mode or OracleMode(), counts, durations)

    def unit_queries(self, power: float) -> int:
        return phase_query_cost(self.plan, power)[0]

    def multiplier(self, power: float) -> int:
        return phase_query_cost(self.plan, power)[1]

    def phases(self, power: float, rng: Optional[RandomSource] = None) -> np.ndarray:
        phases = power * self.table
        if self.mode.phase_error > 0:
            if rng is None:
                raise PlanError("Injected phase error needs a random stream")
            eps = self.mode.phase_error
            phases = phases + as_generator(rng).uniform(-eps, eps, size=phases.size)
        return phases

    def apply(
        self,
        state: StateVector,
        power: float,
        ledger: Optional[ResourceLedger] = None,
        rng: Optional[RandomSource] = None,
    ) -> StateVector:
        if state.layout != self.layout:
            raise RegisterError(f"Phase oracle acts on {self.layout}, got {state.layout}")
        out = state.copy()
        out.amplitudes *= np.exp(1j * self.phases(power, rng))
        self.charge(power, ledger)
        return out

    def charge(self, power: float, ledger: Optional[ResourceLedger]):
        """Ledger cost of one application at ``power``"""
        if ledger is None or power == 0:
            return
        ledger.charge_phase_oracle(
            self.unit_queries(power),
            self.multiplier(power),
            self.evolution_counts,
            self.evolution_durations,
        )


def _weighted_duration(plan: "GradientPlan", weights: Dict[int, float], n: int) -> float:
    """|a_ell|-weighted mean evolution duration of one probability-oracle call"""
    total = sum(weights.values())
    if total == 0:
        return 0.0
    return sum(w * float(np.sum(np.abs(shift_angles(ell * plan.r, n)))) for ell, w in weights.items()) / total


def apply_phase_oracle(
    state: StateVector,
    oracle: PhaseOracle,
    power: float,
    ledger: Optional[ResourceLedger] = None,
    rng: Optional[RandomSource] = None,
) -> StateVector:
    """|k> -> exp(i power h(k)) |k>"""
    return oracle.apply(state, power, ledger, rng)
