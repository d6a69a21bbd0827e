"""
Simultaneous expectation-value estimation through the gradient of f
"""
import time
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from gradient import Algorithm1Runner, GradientEstimate, GradientPlan, solve_plan_general, solve_plan_uniform
from operators import ObservableSet
from oracles import (
    HadamardVariant,
    OracleMode,
    ParameterizedUnitary,
    PhaseOracle,
    ResourceLedger,
    StatePrepOracle,
)
from utils.config import config
from utils.errors import RegisterError
from utils.logger import pipeline_logger
from .base_pipeline import BasePipeline
from .report import EstimationReport


class GradientPipeline(BasePipeline):
    """
    Shared machinery: solve the plan, build the phase table once, then run
    seeded median-of-T estimates on demand
    """

    def __init__(
        self,
        name: str,
        role: str,
        unitary: ParameterizedUnitary,
        psi_oracle: StatePrepOracle,
        bounds: Sequence[float],
        epsilon: float,
        delta: float,
        mode: Optional[OracleMode] = None,
        variant: HadamardVariant = HadamardVariant.IMAGINARY,
        max_qubits: Optional[int] = None,
        allow_clamp: Optional[bool] = None,
    ):
        super().__init__(name=name, role=role)
        self.unitary = unitary
        self.psi_oracle = psi_oracle
        self.bounds = [float(b) for b in bounds]
        self.epsilon = float(epsilon)
        self.delta = float(delta)
        self.mode = mode or OracleMode(config.oracle.mode, config.oracle.phase_error)
        self.variant = HadamardVariant(variant)
        self.max_qubits = max_qubits
        self.allow_clamp = allow_clamp
        self.plan: Optional[GradientPlan] = None
        self.oracle: Optional[PhaseOracle] = None
        self.runner: Optional[Algorithm1Runner] = None
        self.build_ledger = ResourceLedger()
        self.build_time = 0.0

    def solve_plan(self) -> GradientPlan:
        N = self.unitary.num_qubits
        if all(b == 1.0 for b in self.bounds):
            return solve_plan_uniform(
                len(self.bounds), self.epsilon, self.delta,
                num_system_qubits=N, max_qubits=self.max_qubits, allow_clamp=self.allow_clamp,
            )
        return solve_plan_general(
            self.bounds, self.epsilon, self.delta,
            num_system_qubits=N, max_qubits=self.max_qubits, allow_clamp=self.allow_clamp,
        )

    def prepare(self) -> GradientPlan:
        """Solve the plan and build the phase oracle (idempotent)"""
        if self.runner is None:
            start = time.perf_counter()
            self.plan = self.solve_plan()
            self.oracle = PhaseOracle.build(
                self.unitary, self.psi_oracle, self.plan, self.mode, self.variant, self.build_ledger
            )
            self.runner = Algorithm1Runner(self.plan, self.oracle)
            self.build_time = time.perf_counter() - start
            pipeline_logger.info(
                f"{self.name}: plan m={self.plan.m}, n={self.plan.n}, T={self.plan.T}, "
                f"built in {self.build_time:.2f}s"
            )
        return self.plan

    def run_gradient(self, seed: int, trial: int = 0) -> Tuple[GradientEstimate, ResourceLedger]:
        """Median-of-T gradient estimate with its own ledger"""
        self.prepare()
        ledger = ResourceLedger()
        result = self.runner.estimate(seed, ledger, start=trial * self.plan.T)
        return result, self.build_ledger.merge(ledger)

    def _report(
        self,
        task: str,
        seed: int,
        ids,
        estimates,
        references,
        result: GradientEstimate,
        ledger: ResourceLedger,
        run_time: float,
        **fields,
    ) -> EstimationReport:
        return EstimationReport.from_values(
            estimates,
            references,
            self.epsilon,
            task=task,
            mode=self.mode.kind.value,
            seed=seed,
            ids=list(ids),
            plan=self.plan,
            ledger=ledger,
            raw_outcomes=[list(p.labels) for p in result.points],
            per_repetition=result.per_repetition.tolist(),
            timings={'build': self.build_time, 'estimate': run_time},
            **fields,
        )

    def execute(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        seed = int(inputs.get('seed', config.default_seed))
        report = self.estimate(seed, int(inputs.get('trial', 0)))
        return {'report': report}


class ExpectationPipeline(GradientPipeline):
    """<psi|O_j|psi> for all j from one gradient of f at 0"""

    def __init__(
        self,
        obs_set: ObservableSet,
        psi_oracle: StatePrepOracle,
        epsilon: float,
        delta: float,
        mode: Optional[OracleMode] = None,
        max_qubits: Optional[int] = None,
        allow_clamp: Optional[bool] = None,
    ):
        if psi_oracle.num_qubits != obs_set.num_qubits:
            raise RegisterError(
                f"State has {psi_oracle.num_qubits} qubits, observables act on {obs_set.num_qubits}"
            )
        super().__init__(
            name="ExpectationPipeline",
            role="Simultaneous expectation values",
            unitary=ParameterizedUnitary.from_observables(obs_set),
            psi_oracle=psi_oracle,
            bounds=obs_set.bounds.tolist(),
            epsilon=epsilon,
            delta=delta,
            mode=mode,
            max_qubits=max_qubits,
            allow_clamp=allow_clamp,
        )
        self.obs_set = obs_set

    def references(self) -> np.ndarray:
        return self.obs_set.expectations(self.psi_oracle.psi)

    def estimate(self, seed: int, trial: int = 0) -> EstimationReport:
        start = time.perf_counter()
        result, ledger = self.run_gradient(seed, trial)
        return self._report(
            "estimate", seed, self.obs_set.ids, result.estimate, self.references(),
            result, ledger, time.perf_counter() - start,
        )


def estimate_expectations(
    obs_set: ObservableSet,
    psi_oracle: StatePrepOracle,
    epsilon: float,
    delta: float,
    mode: Optional[OracleMode] = None,
    seed: Optional[int] = None,
    **kwargs,
) -> EstimationReport:
    """One-shot convenience wrapper around ExpectationPipeline"""
    pipeline = ExpectationPipeline(obs_set, psi_oracle, epsilon, delta, mode, **kwargs)
    seed = config.default_seed if seed is None else seed
    return pipeline.run({'seed': seed})['report']
