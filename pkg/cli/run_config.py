"""
Run configuration: JSON file plus command-line overrides
"""
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from oracles import OracleKind
from utils.errors import ConfigError

MIN_BENCHMARK_TRIALS = 30
DEFAULT_BENCHMARK_TRIALS = 300


class Task(str, Enum):
    ESTIMATE = "estimate"
    CORRELATE = "correlate"
    FIXTURE = "fixture"
    COST = "cost"
    BENCHMARK = "benchmark"


class FixtureSpec(BaseModel):
    A: List[List[float]]
    p: List[float]
    estimate: bool = False


class CostQuerySpec(BaseModel):
    scenario: str
    params: Dict[str, Any] = {}


class BenchmarkSpec(BaseModel):
    """Which instance to benchmark and the sampling budget sweep"""
    target: Task = Task.ESTIMATE
    baseline: bool = True
    sweep_budgets: Optional[List[int]] = None
    sweep_trials: int = 200

    @field_validator('target')
    @classmethod
    def _target(cls, value: Task) -> Task:
        if value not in (Task.ESTIMATE, Task.CORRELATE, Task.FIXTURE):
            raise ValueError("benchmark target must be estimate, correlate or fixture")
        return value


class RunConfig(BaseModel):
    """One experiment; observable, state and correlation blocks stay raw here and
    are parsed into domain objects by the commands, which report field paths"""
    model_config = ConfigDict(extra='forbid')

    task: Task
    observables: Optional[List[Dict[str, Any]]] = None
    state: Optional[Dict[str, Any]] = None
    correlation: Optional[Dict[str, Any]] = None
    fixture: Optional[FixtureSpec] = None
    cost: Optional[List[CostQuerySpec]] = None
    benchmark: Optional[BenchmarkSpec] = None
    epsilon: Optional[float] = None
    delta: float = 1.0 / 3.0
    seed: Optional[int] = None
    mode: Optional[OracleKind] = None
    phase_error: float = 0.0
    trials: Optional[int] = None
    max_qubits: Optional[int] = None
    allow_clamp: Optional[bool] = None
    out: Optional[str] = None

    @field_validator('epsilon')
    @classmethod
    def _epsilon(cls, value):
        if value is not None and not value > 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator('delta')
    @classmethod
    def _delta(cls, value):
        if not 0 < value < 1:
            raise ValueError(f"must lie in (0, 1), got {value}")
        return value

    @field_validator('trials')
    @classmethod
    def _trials(cls, value):
        if value is not None and value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value

    @field_validator('seed')
    @classmethod
    def _seed(cls, value):
        if value is not None and not 0 <= value < 2 ** 64:
            raise ValueError(f"must be an unsigned 64-bit integer, got {value}")
        return value

    @model_validator(mode='after')
    def _task_fields(self) -> "RunConfig":
        task = self.task
        target = self.benchmark.target if self.benchmark is not None else Task.ESTIMATE
        needs = {
            Task.ESTIMATE: ['observables', 'state', 'epsilon'],
            Task.CORRELATE: ['correlation', 'state', 'epsilon'],
            Task.FIXTURE: ['fixture'] + (['epsilon'] if self.fixture is not None and self.fixture.estimate else []),
            Task.COST: ['cost'],
        }
        if task is Task.BENCHMARK:
            required = ['epsilon'] + [f for f in needs[target] if f != 'epsilon']
        else:
            required = needs[task]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"task '{task.value}' requires: {', '.join(missing)}")
        if task is Task.COST and not self.cost:
            raise ValueError("task 'cost' requires at least one query")
        if task is Task.BENCHMARK:
            if self.trials is None:
                self.trials = DEFAULT_BENCHMARK_TRIALS
            if self.trials < MIN_BENCHMARK_TRIALS:
                raise ValueError(f"benchmark needs at least {MIN_BENCHMARK_TRIALS} trials, got {self.trials}")
        return self

    @property
    def benchmark_spec(self) -> BenchmarkSpec:
        return self.benchmark or BenchmarkSpec()


def _validation_message(error: ValidationError) -> ConfigError:
    first = error.errors()[0]
    where = ".".join(str(p) for p in first['loc']) or None
    message = first['msg'].removeprefix("Value error, ")
    return ConfigError(message, where)


def parse_run_config(data: Mapping[str, Any], overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Validate a config mapping; non-None overrides win over the file"""
    if not isinstance(data, Mapping):
        raise ConfigError("top level must be a JSON object")
    merged = dict(data)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise _validation_message(e) from None


def load_run_config(path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Read and validate a JSON run config

    Args:
        path: Config file path
        overrides: Command-line values (None means not given)

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: Malformed JSON (with line and column) or invalid fields
        OSError: File cannot be read
    """
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}", str(path)) from None
    return parse_run_config(data, overrides)
