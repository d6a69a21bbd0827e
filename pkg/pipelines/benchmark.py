"""
Seeded trial harness: gradient estimator against a sampling baseline
"""
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from oracles import ResourceLedger
from simcore import RngStream
from utils.config import config
from utils.errors import BudgetError, PlanError
from utils.logger import pipeline_logger
from .base_pipeline import BasePipeline
from .expectation import GradientPipeline
from .sampling import SamplingBaseline

# sampling draws use stream ids far above any gradient repetition id
SAMPLING_STREAM_BASE = 1 << 40
SWEEP_STREAM_BASE = 1 << 41

MIN_TRIALS = 30


class MethodSummary(BaseModel):
    method: str
    trials: int
    successes: int
    success_fraction: float
    error_quantiles: Dict[str, float]
    u_psi_per_trial: float
    ledger: ResourceLedger


class BudgetSweep(BaseModel):
    """RMS sampling error at each U_psi budget and the fitted log-log slope"""
    budgets: List[int]
    rms_errors: List[float]
    fitted_exponent: Optional[float] = None


class BenchmarkSummary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default_factory=lambda: config.schema_version, alias="schema")
    task: str = "benchmark"
    estimator: str
    seed: int
    mode: str
    trials: int
    epsilon: float
    ids: List[str]
    references: List[float]
    methods: Dict[str, MethodSummary]
    budget_sweep: Optional[BudgetSweep] = None
    success: bool
    timings: Dict[str, float] = Field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        data = self.model_dump(by_alias=True, mode="json")
        if not include_timings:
            data.pop("timings", None)
        return data

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def error_quantiles(errors: Sequence[float]) -> Dict[str, float]:
    series = pd.Series(list(errors), dtype=float)
    return {
        'q50': float(series.quantile(0.5)),
        'q90': float(series.quantile(0.9)),
        'max': float(series.max()),
        'mean': float(series.mean()),
    }


def fit_exponent(budgets: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Slope of log(error) against log(budget); None when any error is zero"""
    errors = np.asarray(errors, dtype=float)
    if len(budgets) < 2 or np.any(errors <= 0):
        return None
    slope, _ = np.polyfit(np.log(np.asarray(budgets, dtype=float)), np.log(errors), 1)
    return float(slope)


class BenchmarkPipeline(BasePipeline):
    """
    Runs ``trials`` seeded gradient estimates and, when a baseline is given,
    the sampling estimator at the same mean U_psi budget per trial
    """

    def __init__(
        self,
        estimator: GradientPipeline,
        baseline: Optional[SamplingBaseline] = None,
        trials: int = 300,
        sweep_budgets: Optional[Sequence[int]] = None,
        sweep_trials: int = 200,
        show_progress: bool = True,
    ):
        super().__init__(name="BenchmarkPipeline", role="Seeded success-probability harness")
        if trials < MIN_TRIALS:
            raise PlanError(f"Benchmark needs at least {MIN_TRIALS} trials, got {trials}")
        self.estimator = estimator
        self.baseline = baseline
        self.trials = int(trials)
        self.sweep_budgets = list(sweep_budgets) if sweep_budgets else None
        self.sweep_trials = int(sweep_trials)
        self.show_progress = show_progress
        self.per_trial: List[Dict[str, Any]] = []

    def _gradient_trials(self, seed: int) -> MethodSummary:
        ledger = ResourceLedger()
        errors = []
        successes = 0
        for trial in tqdm(range(self.trials), desc="gradient trials", disable=not self.show_progress):
            report = self.estimator.estimate(seed, trial)
            ledger = ledger.merge(report.ledger)
            errors.append(report.max_error)
            successes += int(report.success)
            self.per_trial.append({
                'method': 'gradient', 'trial': trial,
                'max_error': report.max_error, 'success': report.success,
                'u_psi_queries': report.ledger.u_psi_queries,
            })
        return MethodSummary(
            method='gradient',
            trials=self.trials,
            successes=successes,
            success_fraction=successes / self.trials,
            error_quantiles=error_quantiles(errors),
            u_psi_per_trial=ledger.u_psi_queries / self.trials,
            ledger=ledger,
        )

    def _sampling_trials(self, seed: int, budget: int, references: np.ndarray) -> MethodSummary:
        ledger = ResourceLedger()
        errors = []
        successes = 0
        epsilon = self.estimator.epsilon
        for trial in tqdm(range(self.trials), desc="sampling trials", disable=not self.show_progress):
            estimates = self.baseline.estimate(budget, RngStream(seed, SAMPLING_STREAM_BASE + trial), ledger)
            max_error = float(np.max(np.abs(estimates - references)))
            errors.append(max_error)
            successes += int(max_error <= epsilon)
            self.per_trial.append({
                'method': 'sampling', 'trial': trial,
                'max_error': max_error, 'success': max_error <= epsilon,
                'u_psi_queries': budget,
            })
        return MethodSummary(
            method='sampling',
            trials=self.trials,
            successes=successes,
            success_fraction=successes / self.trials,
            error_quantiles=error_quantiles(errors),
            u_psi_per_trial=ledger.u_psi_queries / self.trials,
            ledger=ledger,
        )

    def budget_sweep(self, seed: int, budgets: Sequence[int], references: np.ndarray) -> BudgetSweep:
        """RMS error over ``sweep_trials`` draws per budget"""
        rms = []
        for b, budget in enumerate(budgets):
            squared = []
            for trial in range(self.sweep_trials):
                stream = RngStream(seed, SWEEP_STREAM_BASE + b * self.sweep_trials + trial)
                estimates = self.baseline.estimate(int(budget), stream)
                squared.append(np.mean((estimates - references) ** 2))
            rms.append(float(np.sqrt(np.mean(squared))))
        exponent = fit_exponent(budgets, rms)
        if exponent is None:
            pipeline_logger.warning("Sampling errors vanish at some budget; no exponent fitted")
        return BudgetSweep(budgets=[int(b) for b in budgets], rms_errors=rms, fitted_exponent=exponent)

    def execute(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        seed = int(inputs.get('seed', config.default_seed))
        self.per_trial = []
        start = time.perf_counter()
        self.estimator.prepare()
        references = np.asarray(self.estimator.references(), dtype=float)

        methods = {'gradient': self._gradient_trials(seed)}
        sweep = None
        if self.baseline is not None:
            budget = int(np.ceil(methods['gradient'].u_psi_per_trial))
            if budget < len(self.baseline.groups):
                raise BudgetError(
                    f"Matched budget {budget} cannot cover {len(self.baseline.groups)} measurement groups"
                )
            methods['sampling'] = self._sampling_trials(seed, budget, references)
            budgets = self.sweep_budgets or [budget // 16, budget // 4, budget, budget * 4]
            budgets = [b for b in budgets if b >= len(self.baseline.groups)]
            sweep = self.budget_sweep(seed, budgets, references)

        gradient = methods['gradient']
        summary = BenchmarkSummary(
            estimator=self.estimator.name,
            seed=seed,
            mode=self.estimator.mode.kind.value,
            trials=self.trials,
            epsilon=self.estimator.epsilon,
            ids=self._ids(),
            references=references.tolist(),
            methods=methods,
            budget_sweep=sweep,
            success=gradient.success_fraction >= 2.0 / 3.0,
            timings={'total': time.perf_counter() - start},
        )
        pipeline_logger.info(
            f"Benchmark: gradient success {gradient.success_fraction:.3f} over {self.trials} trials"
        )
        return {'summary': summary, 'per_trial': self.trial_table()}

    def _ids(self) -> List[str]:
        if hasattr(self.estimator, 'obs_set'):
            return self.estimator.obs_set.ids
        return [p.id for p in self.estimator.spec.probes]

    def trial_table(self) -> pd.DataFrame:
        return pd.DataFrame(self.per_trial, columns=['method', 'trial', 'max_error', 'success', 'u_psi_queries'])


def write_trial_csv(table: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False)
    pipeline_logger.info(f"Wrote {len(table)} trial rows to {path}")
    return path
