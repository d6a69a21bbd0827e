"""
Task commands: build domain objects from a RunConfig, run, write the output
"""
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from costmodel import write_cost_csv
from operators import ObservableSet
from oracles import OracleMode, StatePrepOracle
from pipelines import (
    CorrelationPipeline,
    ExpectationPipeline,
    ExperimentOrchestrator,
    FixturePipeline,
    GradientPipeline,
    SamplingBaseline,
    build_lowerbound_instance,
    correlation_spec_from_description,
    write_trial_csv,
)
from utils.config import config
from utils.errors import ConfigError, PlanError, RegisterError
from utils.logger import main_logger
from .run_config import RunConfig, Task

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2

FIXTURE_TOLERANCE = 1e-11


def emit(text: str, out: Optional[str]) -> Optional[Path]:
    """Write to ``out`` (creating directories) or to stdout"""
    if out is None:
        sys.stdout.write(text + "\n")
        return None
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n")
    main_logger.info(f"Wrote {path}")
    return path


def sibling_csv(out: Optional[str]) -> Optional[Path]:
    if out is None or not out.endswith(".json"):
        return None
    return Path(out).with_suffix(".csv")


def _mode(cfg: RunConfig) -> OracleMode:
    return OracleMode(cfg.mode or config.oracle.mode, cfg.phase_error)


def _seed(cfg: RunConfig) -> int:
    return config.default_seed if cfg.seed is None else cfg.seed


def _limits(cfg: RunConfig) -> Dict[str, Any]:
    return {'max_qubits': cfg.max_qubits, 'allow_clamp': cfg.allow_clamp}


def _state(cfg: RunConfig) -> StatePrepOracle:
    return StatePrepOracle.from_description(cfg.state, "state")


def _expectation_inputs(cfg: RunConfig) -> Tuple[ObservableSet, StatePrepOracle]:
    obs_set = ObservableSet.from_descriptions(cfg.observables)
    psi_oracle = _state(cfg)
    if psi_oracle.num_qubits != obs_set.num_qubits:
        raise ConfigError(
            f"state has {psi_oracle.num_qubits} qubits, observables act on {obs_set.num_qubits}", "state"
        )
    return obs_set, psi_oracle


def _fixture_instance(cfg: RunConfig):
    try:
        return build_lowerbound_instance(cfg.fixture.A, cfg.fixture.p)
    except PlanError as e:
        raise ConfigError(str(e), "fixture") from None


def cmd_estimate(cfg: RunConfig) -> int:
    """Simultaneous expectation values; exit 0 when every error is within epsilon"""
    obs_set, psi_oracle = _expectation_inputs(cfg)
    report = ExperimentOrchestrator().run_estimate(
        obs_set, psi_oracle, cfg.epsilon, cfg.delta, _mode(cfg), _seed(cfg), **_limits(cfg)
    )
    emit(report.to_json(), cfg.out)
    return EXIT_OK if report.success else EXIT_FAILED


def cmd_correlate(cfg: RunConfig) -> int:
    """Real or imaginary parts of the correlation functions"""
    spec = correlation_spec_from_description(cfg.correlation)
    psi_oracle = _state(cfg)
    if psi_oracle.num_qubits != spec.num_qubits:
        raise ConfigError(f"state has {psi_oracle.num_qubits} qubits, system has {spec.num_qubits}", "state")
    report = ExperimentOrchestrator().run_correlate(
        spec, psi_oracle, cfg.epsilon, cfg.delta, _mode(cfg), _seed(cfg), **_limits(cfg)
    )
    emit(report.to_json(), cfg.out)
    return EXIT_OK if report.success else EXIT_FAILED


def cmd_fixture(cfg: RunConfig) -> int:
    """Check (A p)_i = <Z_i>, optionally estimating the Z_i end to end"""
    instance = _fixture_instance(cfg)
    results = ExperimentOrchestrator().run_fixture(
        instance,
        estimate=cfg.fixture.estimate,
        epsilon=cfg.epsilon,
        delta=cfg.delta,
        mode=_mode(cfg),
        seed=_seed(cfg),
        **_limits(cfg),
    )
    identity_holds = results['max_deviation'] < FIXTURE_TOLERANCE
    payload: Dict[str, Any] = {
        'schema': config.schema_version,
        'task': Task.FIXTURE.value,
        'A': instance.A.tolist(),
        'p': instance.p.tolist(),
        'targets': results['targets'],
        'expectations': results['expectations'],
        'max_deviation': results['max_deviation'],
        'identity_holds': identity_holds,
    }
    success = identity_holds
    if 'report' in results:
        payload['report'] = results['report'].to_dict()
        success = success and results['report'].success
    payload['success'] = success
    emit(json.dumps(payload, indent=2), cfg.out)
    return EXIT_OK if success else EXIT_FAILED


def cmd_cost(cfg: RunConfig) -> int:
    """Evaluate cost queries; ``.csv`` outputs get the table, others JSON"""
    queries = [query.model_dump() for query in cfg.cost]
    try:
        results = ExperimentOrchestrator().run_cost(queries)
    except PlanError as e:
        raise ConfigError(str(e), "cost") from None
    reports = results['reports']

    if cfg.out is not None and cfg.out.endswith(".csv"):
        write_cost_csv(reports, cfg.out)
        return EXIT_OK
    payload = {
        'schema': config.schema_version,
        'task': Task.COST.value,
        'reports': [report.model_dump(mode="json") for report in reports],
    }
    emit(json.dumps(payload, indent=2), cfg.out)
    csv_path = sibling_csv(cfg.out)
    if csv_path is not None:
        write_cost_csv(reports, csv_path)
    return EXIT_OK


def _benchmark_target(cfg: RunConfig) -> Tuple[GradientPipeline, Optional[SamplingBaseline]]:
    spec = cfg.benchmark_spec
    mode, limits = _mode(cfg), _limits(cfg)
    if spec.target is Task.CORRELATE:
        correlation = correlation_spec_from_description(cfg.correlation)
        psi_oracle = _state(cfg)
        if spec.baseline:
            main_logger.info("Sampling baseline applies to observables only; skipped for correlations")
        try:
            estimator = CorrelationPipeline(correlation, psi_oracle, cfg.epsilon, cfg.delta, mode, **limits)
        except RegisterError as e:
            raise ConfigError(str(e), "state") from None
        return estimator, None
    if spec.target is Task.FIXTURE:
        instance = _fixture_instance(cfg)
        obs_set, psi_oracle = instance.observables, instance.psi_oracle
        estimator = FixturePipeline(instance).estimator(cfg.epsilon, cfg.delta, mode, **limits)
    else:
        obs_set, psi_oracle = _expectation_inputs(cfg)
        estimator = ExpectationPipeline(obs_set, psi_oracle, cfg.epsilon, cfg.delta, mode, **limits)
    baseline = SamplingBaseline(obs_set, psi_oracle) if spec.baseline else None
    return estimator, baseline


def cmd_benchmark(cfg: RunConfig) -> int:
    """Seeded trials of the gradient estimator against the sampling baseline"""
    estimator, baseline = _benchmark_target(cfg)
    spec = cfg.benchmark_spec
    results = ExperimentOrchestrator().run_benchmark(
        estimator,
        baseline,
        trials=cfg.trials,
        seed=_seed(cfg),
        sweep_budgets=spec.sweep_budgets,
        sweep_trials=spec.sweep_trials,
        show_progress=sys.stderr.isatty(),
    )
    summary = results['summary']
    emit(summary.to_json(), cfg.out)
    csv_path = sibling_csv(cfg.out)
    if csv_path is not None:
        write_trial_csv(results['per_trial'], csv_path)
    return EXIT_OK if summary.success else EXIT_FAILED


COMMANDS = {
    Task.ESTIMATE: cmd_estimate,
    Task.CORRELATE: cmd_correlate,
    Task.FIXTURE: cmd_fixture,
    Task.COST: cmd_cost,
    Task.BENCHMARK: cmd_benchmark,
}


def run_task(cfg: RunConfig) -> int:
    main_logger.info(f"Running task '{cfg.task.value}'")
    return COMMANDS[cfg.task](cfg)
