"""End-to-end estimation pipelines and the experiment orchestrator"""

from .base_pipeline import BasePipeline
from .report import EstimationReport
from .expectation import ExpectationPipeline, GradientPipeline, estimate_expectations
from .correlation import (
    CorrelationPart,
    CorrelationPipeline,
    CorrelationSpec,
    correlation_spec_from_description,
    estimate_correlations,
)
from .fixture import FixturePipeline, LowerBoundInstance, build_lowerbound_instance
from .sampling import SamplingBaseline
from .benchmark import (
    BenchmarkPipeline,
    BenchmarkSummary,
    BudgetSweep,
    MethodSummary,
    error_quantiles,
    fit_exponent,
    write_trial_csv,
)
from .cost import CostPipeline
from .orchestrator import ExperimentOrchestrator

__all__ = [
    'BasePipeline',
    'EstimationReport',
    'ExpectationPipeline',
    'GradientPipeline',
    'estimate_expectations',
    'CorrelationPart',
    'CorrelationPipeline',
    'CorrelationSpec',
    'correlation_spec_from_description',
    'estimate_correlations',
    'FixturePipeline',
    'LowerBoundInstance',
    'build_lowerbound_instance',
    'SamplingBaseline',
    'BenchmarkPipeline',
    'BenchmarkSummary',
    'BudgetSweep',
    'MethodSummary',
    'error_quantiles',
    'fit_exponent',
    'write_trial_csv',
    'CostPipeline',
    'ExperimentOrchestrator',
]
