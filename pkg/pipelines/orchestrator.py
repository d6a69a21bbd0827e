"""
Orchestrator - Dispatches experiment tasks to pipelines
"""
from typing import Any, Dict, List, Mapping, Optional, Sequence

from operators import ObservableSet
from oracles import OracleMode, StatePrepOracle
from utils.config import config
from utils.logger import pipeline_logger
from .base_pipeline import BasePipeline
from .benchmark import BenchmarkPipeline
from .correlation import CorrelationPipeline, CorrelationSpec
from .cost import CostPipeline
from .expectation import ExpectationPipeline, GradientPipeline
from .fixture import FixturePipeline, LowerBoundInstance
from .report import EstimationReport
from .sampling import SamplingBaseline


class ExperimentOrchestrator:
    """Runs one task per call and keeps a log of every pipeline it ran"""

    def __init__(self):
        self.pipelines: List[BasePipeline] = []
        self.execution_log: List[Dict[str, Any]] = []
        pipeline_logger.info("ExperimentOrchestrator initialized")

    def _run(self, pipeline: BasePipeline, inputs: Dict[str, Any]) -> Dict[str, Any]:
        self.pipelines.append(pipeline)
        results = pipeline.run(inputs)
        self._log_pipeline_completion(pipeline)
        return results

    def run_estimate(
        self,
        obs_set: ObservableSet,
        psi_oracle: StatePrepOracle,
        epsilon: float,
        delta: float,
        mode: Optional[OracleMode] = None,
        seed: Optional[int] = None,
        **kwargs,
    ) -> EstimationReport:
        pipeline = ExpectationPipeline(obs_set, psi_oracle, epsilon, delta, mode, **kwargs)
        return self._run(pipeline, {'seed': self._seed(seed)})['report']

    def run_correlate(
        self,
        spec: CorrelationSpec,
        psi_oracle: StatePrepOracle,
        epsilon: float,
        delta: float,
        mode: Optional[OracleMode] = None,
        seed: Optional[int] = None,
        **kwargs,
    ) -> EstimationReport:
        pipeline = CorrelationPipeline(spec, psi_oracle, epsilon, delta, mode, **kwargs)
        return self._run(pipeline, {'seed': self._seed(seed)})['report']

    def run_fixture(
        self,
        instance: LowerBoundInstance,
        estimate: bool = False,
        epsilon: Optional[float] = None,
        delta: Optional[float] = None,
        mode: Optional[OracleMode] = None,
        seed: Optional[int] = None,
        **kwargs,
    ) -> Dict[str, Any]:
        return self._run(FixturePipeline(instance), {
            'estimate': estimate,
            'epsilon': epsilon,
            'delta': delta,
            'mode': mode,
            'seed': self._seed(seed),
            **kwargs,
        })

    def run_cost(self, queries: Sequence[Mapping[str, Any]]) -> Dict[str, Any]:
        return self._run(CostPipeline(queries), {})

    def run_benchmark(
        self,
        estimator: GradientPipeline,
        baseline: Optional[SamplingBaseline] = None,
        trials: int = 300,
        seed: Optional[int] = None,
        **kwargs,
    ) -> Dict[str, Any]:
        pipeline = BenchmarkPipeline(estimator, baseline, trials, **kwargs)
        return self._run(pipeline, {'seed': self._seed(seed)})

    @staticmethod
    def _seed(seed: Optional[int]) -> int:
        return config.default_seed if seed is None else int(seed)

    def _log_pipeline_completion(self, pipeline: BasePipeline):
        """Log pipeline completion"""
        status = pipeline.get_status()
        self.execution_log.append(status)
        pipeline_logger.info(f"{pipeline.name} completed in {status['execution_time']:.2f}s")

    def get_pipeline_statuses(self) -> List[Dict[str, Any]]:
        return [pipeline.get_status() for pipeline in self.pipelines]

    def get_execution_summary(self) -> Dict[str, Any]:
        """Get execution summary"""
        if not self.execution_log:
            return {'message': 'No executions yet'}
        return {
            'total_pipelines': len(self.pipelines),
            'total_execution_time': sum(log['execution_time'] for log in self.execution_log),
            'pipeline_breakdown': self.execution_log,
        }
