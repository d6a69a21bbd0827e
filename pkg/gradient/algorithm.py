"""
Gradient estimation by phase kickback and inverse QFT
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from oracles import PhaseOracle, ResourceLedger, index_register_names
from simcore import StateVector, apply_hadamard_all, apply_qft_inverse, measure_all, streams
from simcore.state import RandomSource, as_generator
from utils.errors import PlanError
from utils.logger import gradient_logger
from .aggregate import median_aggregate
from .grid import GridPoint
from .plan import GradientPlan


def decode(plan: GradientPlan, point: GridPoint, i: int) -> float:
    """g_i ~ N_i k_i / (S r)"""
    if not 0 <= i < plan.M:
        raise PlanError(f"Component {i} out of range for M={plan.M}")
    return plan.register_sizes[i] * point.values[i] / (plan.S * plan.r)


def decode_all(plan: GradientPlan, point: GridPoint) -> np.ndarray:
    return np.array([decode(plan, point, i) for i in range(plan.M)])


@dataclass
class GradientEstimate:
    estimate: np.ndarray
    per_repetition: np.ndarray
    points: List[GridPoint]


class Algorithm1Runner:
    """
    Hadamard on every index register, one phase-oracle call at power 2 pi S,
    inverse QFT per register, measurement.

    Without injected phase error every repetition sees the same pre-measurement
    state, so it is prepared once and only the measurement is redrawn.
    """

    def __init__(self, plan: GradientPlan, oracle: PhaseOracle):
        if oracle.plan is not plan and oracle.plan != plan:
            raise PlanError("Phase oracle was built for a different plan")
        self.plan = plan
        self.oracle = oracle
        self.power = 2 * np.pi * plan.S
        self.names = index_register_names(plan.M)
        self._cached: Optional[StateVector] = None

    def prepare(self, rng: Optional[RandomSource] = None) -> StateVector:
        state = StateVector.zero(self.oracle.layout)
        for name in self.names:
            state = apply_hadamard_all(state, name)
        state = self.oracle.apply(state, self.power, rng=rng)
        for name in self.names:
            state = apply_qft_inverse(state, name)
        return state

    def run(self, rng: RandomSource, ledger: Optional[ResourceLedger] = None) -> GridPoint:
        """One repetition; returns the measured grid point"""
        generator = as_generator(rng)
        if self.oracle.mode.phase_error > 0:
            state = self.prepare(generator)
        else:
            if self._cached is None:
                self._cached = self.prepare()
            state = self._cached
        self.oracle.charge(self.power, ledger)
        if ledger is not None:
            ledger.note_repetition()
            ledger.note_qubits(self.plan.total_qubits)
        outcome = measure_all(state, generator)
        return GridPoint.from_labels([outcome[name].label for name in self.names], self.plan.n)

    def estimate(
        self, seed: int, ledger: Optional[ResourceLedger] = None, start: int = 0
    ) -> GradientEstimate:
        """T seeded repetitions on streams start..start+T-1, decoded and median-aggregated"""
        points = [self.run(stream, ledger) for stream in streams(seed, self.plan.T, start)]
        per_repetition = np.array([decode_all(self.plan, p) for p in points])
        estimate = median_aggregate(per_repetition)
        gradient_logger.debug(f"Seed {seed}: median estimate {np.round(estimate, 6).tolist()}")
        return GradientEstimate(estimate=estimate, per_repetition=per_repetition, points=points)


def run_algorithm1(
    plan: GradientPlan,
    oracle: PhaseOracle,
    rng: RandomSource,
    ledger: Optional[ResourceLedger] = None,
) -> GridPoint:
    """Single run of the estimator; returns the decoded-ready grid point"""
    return Algorithm1Runner(plan, oracle).run(rng, ledger)
