"""
Cost queries: method comparisons, general-norm query count, space, correlation costs
"""
import math
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from utils.errors import PlanError
from utils.logger import cost_logger
from .expressions import CostExpression, CostRecord, CostTerm, make_record
from .tradeoffs import HybridRegime, group_size_bound, hybrid_optimum, tradeoff_expressions, tradeoff_groups


class CostScenario(str, Enum):
    COMMUTING = "commuting"
    NONCOMMUTING = "noncommuting"
    KRDM = "kRDM"
    CORRELATION = "correlation"
    HYBRID_EXP = "hybrid-exp"
    HYBRID_POLY = "hybrid-poly"
    TRADEOFF = "tradeoff"


class CostQuery(BaseModel):
    """Scenario plus whichever parameters it needs; absent parameters stay None"""
    scenario: CostScenario
    M: Optional[int] = None
    N: Optional[int] = None
    k: Optional[int] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    bounds: Optional[List[float]] = None
    B_bar: Optional[float] = None
    g: Optional[float] = None
    alpha: Optional[float] = None
    gamma: Optional[float] = None
    spacing: Optional[float] = None
    times: Optional[List[float]] = None

    @field_validator('M', 'k', 'epsilon', 'B_bar', 'g', 'alpha', 'gamma', 'spacing')
    @classmethod
    def _positive(cls, value):
        if value is not None and not value > 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator('N')
    @classmethod
    def _non_negative(cls, value):
        if value is not None and value < 0:
            raise ValueError(f"must be non-negative, got {value}")
        return value

    @field_validator('delta')
    @classmethod
    def _probability(cls, value):
        if value is not None and not 0 < value < 1:
            raise ValueError(f"must lie in (0, 1), got {value}")
        return value

    @field_validator('bounds')
    @classmethod
    def _bounds(cls, value):
        if value is not None and (not value or any(not b > 0 for b in value)):
            raise ValueError("must be a non-empty list of positive numbers")
        return value

    @field_validator('times')
    @classmethod
    def _times(cls, value):
        if value is not None:
            if not value or any(t < 0 for t in value):
                raise ValueError("must be a non-empty list of non-negative times")
            if any(b < a for a, b in zip(value, value[1:])):
                raise ValueError("must be nondecreasing")
        return value

    def require(self, *names: str):
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise PlanError(f"Scenario '{self.scenario.value}' needs parameter(s): {', '.join(missing)}")


class CostReport(BaseModel):
    """All cost records produced for one query"""
    scenario: CostScenario
    params: Dict[str, Any]
    records: List[CostRecord] = Field(default_factory=list)

    def get(self, method: str, quantity: str = "u_psi_queries") -> CostRecord:
        for record in self.records:
            if record.method == method and record.quantity == quantity:
                return record
        raise PlanError(f"No '{quantity}' cost for method '{method}' in scenario '{self.scenario.value}'")


def _tilde(powers: Dict[str, float], logs: Optional[Dict[str, float]] = None) -> CostExpression:
    return CostExpression.monomial(powers, logs=logs, tilde=True)


def _big_o(powers: Dict[str, float], logs: Optional[Dict[str, float]] = None) -> CostExpression:
    return CostExpression.monomial(powers, logs=logs, tilde=False)


# scenario -> method -> U_psi query expression, as tabulated for the three workloads
_METHOD_TABLE: Dict[CostScenario, Dict[str, CostExpression]] = {
    CostScenario.COMMUTING: {
        'sampling': _big_o({'eps': -2}, logs={'M': 1}),
        'amplitude_estimation': _tilde({'M': 1, 'eps': -1}),
        'shadow_tomography': _big_o({'eps': -4}, logs={'M': 1}),
        'gradient': _tilde({'M': 0.5, 'eps': -1}),
    },
    CostScenario.NONCOMMUTING: {
        'sampling': _tilde({'M': 1, 'eps': -2}),
        'amplitude_estimation': _tilde({'M': 1, 'eps': -1}),
        'shadow_tomography': _big_o({'eps': -4}, logs={'M': 1}),
        'gradient': _tilde({'M': 0.5, 'eps': -1}),
    },
}


def _krdm_table(k: int) -> Dict[str, CostExpression]:
    # N^k exponents depend on k, so the symbolic form is built per query
    return {
        'sampling': _tilde({'N': k, 'eps': -2}),
        'amplitude_estimation': _tilde({'N': 2 * k, 'eps': -1}),
        'shadow_tomography': _big_o({'k': 1, 'eps': -4}, logs={'N': 1}),
        'gradient': _tilde({'N': k, 'eps': -1}),
    }


def _bounds_of(query: CostQuery) -> List[float]:
    """Per-observable norm bounds; unit bounds unless given"""
    if query.bounds is not None:
        return list(query.bounds)
    if query.B_bar is not None:
        return [query.B_bar / math.sqrt(query.M)] * query.M
    return [1.0] * query.M


def general_query_count(B_bar: float, epsilon: float, M: int, delta: float) -> float:
    """(B/eps) log^{3/2}(B/eps) loglog(B/eps) log(M/delta), B = sqrt(sum B_j^2)"""
    return _general_expression().evaluate(_general_values(B_bar, epsilon, M, delta))


def _general_expression() -> CostExpression:
    return CostExpression.monomial(
        {'B_bar': 1, 'eps': -1},
        logs={'B_bar/eps': 1.5, 'M/delta': 1},
        loglogs={'B_bar/eps': 1},
    )


def _general_values(B_bar: float, epsilon: float, M: int, delta: float) -> Dict[str, float]:
    return {'B_bar': B_bar, 'eps': epsilon, 'B_bar/eps': B_bar / epsilon, 'M/delta': M / delta}


def index_register_qubits(bounds: List[float], epsilon: float) -> int:
    """sum_j ceil(log2(12 z_j / eps)) with z_j = 2 B_j"""
    return int(sum(math.ceil(math.log2(12.0 * 2.0 * b / epsilon)) for b in bounds))


def _expectation_records(query: CostQuery) -> List[CostRecord]:
    if query.M is None and query.bounds is not None:
        query.M = len(query.bounds)
    query.require('M', 'epsilon')
    if query.bounds is not None and len(query.bounds) != query.M:
        raise PlanError(f"Got {len(query.bounds)} bounds for M={query.M} observables")
    scenario = query.scenario.value
    bounds = _bounds_of(query)
    B_bar = math.sqrt(sum(b * b for b in bounds))
    delta = query.delta if query.delta is not None else 1.0 / 3.0
    values = {'M': query.M, 'eps': query.epsilon, 'B_bar': B_bar}

    records = []
    for method, expression in _METHOD_TABLE[query.scenario].items():
        if method == 'gradient' and (query.bounds is not None or query.B_bar is not None):
            expression = _tilde({'B_bar': 1, 'eps': -1})
        records.append(make_record(scenario, method, 'u_psi_queries', expression, values))

    general_values = _general_values(B_bar, query.epsilon, query.M, delta)
    Q = _general_expression().evaluate(general_values)
    records.append(make_record(
        scenario, 'gradient_general', 'u_psi_queries', _general_expression(), general_values,
        note="log factors as printed, overall constant unknown",
    ))
    records.append(make_record(
        scenario, 'gradient', 'evolution_time', _tilde({'M': 1, 'eps': -1}), values,
    ))

    if query.N is not None:
        index_qubits = index_register_qubits(bounds, query.epsilon)
        space = CostExpression(terms=[
            CostTerm(powers={'N': 1}),
            CostTerm(coefficient=1.0),
            CostTerm(powers={'n_index': 1}),
            CostTerm(loglog_powers={'Q/eps': 1}),
        ])
        records.append(make_record(
            scenario, 'gradient', 'qubits', space,
            {'N': query.N, 'n_index': index_qubits, 'Q/eps': Q / query.epsilon},
            note="loglog term from the phase-oracle conversion, constant unknown",
            extras={'index_qubits': float(index_qubits)},
        ))
    return records


def _krdm_records(query: CostQuery) -> List[CostRecord]:
    query.require('N', 'k', 'epsilon')
    values = {'N': query.N, 'k': query.k, 'eps': query.epsilon}
    return [
        make_record(query.scenario.value, method, 'u_psi_queries', expression, values)
        for method, expression in _krdm_table(query.k).items()
    ]


def _correlation_records(query: CostQuery) -> List[CostRecord]:
    query.require('epsilon')
    scenario = query.scenario.value
    evenly_spaced = query.times is None
    if evenly_spaced:
        if query.M is None or query.spacing is None:
            raise PlanError(f"Scenario '{scenario}' needs either times or both M and spacing")
        times = [query.spacing * (j + 1) for j in range(query.M)]
    else:
        times = list(query.times)
    M = len(times)
    values = {
        'M': M,
        'eps': query.epsilon,
        't_M': times[-1],
        'sum_t': sum(times),
        'Delta': query.spacing if evenly_spaced else 0.0,
    }

    records = [
        make_record(scenario, 'gradient', 'u_psi_queries', _tilde({'M': 0.5, 'eps': -1}), values),
        make_record(scenario, 'amplitude_estimation', 'u_psi_queries', _tilde({'M': 1, 'eps': -1}), values),
        make_record(
            scenario, 'hadamard_test', 'evolution_per_call',
            CostExpression.monomial({'sum_t': 1}, coefficient=2.0), values, constants_known=True,
        ),
    ]
    if evenly_spaced:
        sum_based = values['sum_t'] / query.epsilon
        records.append(make_record(
            scenario, 'gradient', 'evolution_time', _tilde({'M': 1.5, 'Delta': 1, 'eps': -1}), values,
        ))
        records.append(make_record(
            scenario, 'amplitude_estimation', 'evolution_time', _tilde({'M': 2, 'Delta': 2, 'eps': -1}), values,
            note=f"printed form; summing per-point times gives sum_t/eps = {sum_based:.6g}",
            extras={'sum_based': sum_based},
        ))
    else:
        records.append(make_record(
            scenario, 'gradient', 'evolution_time', _tilde({'M': 0.5, 't_M': 1, 'eps': -1}), values,
        ))
        records.append(make_record(
            scenario, 'amplitude_estimation', 'evolution_time', _tilde({'sum_t': 1, 'eps': -1}), values,
        ))
    return records


def _hybrid_records(query: CostQuery) -> List[CostRecord]:
    query.require('M', 'epsilon', 'alpha')
    regime = HybridRegime.EXPONENTIAL if query.scenario is CostScenario.HYBRID_EXP else HybridRegime.POLYNOMIAL
    optimum = hybrid_optimum(regime, query.M, query.epsilon, query.alpha)
    extras = {'K_star': optimum.K_star, 'epsilon_exponent': optimum.epsilon_exponent}
    if query.gamma is not None:
        extras['T_1_bound'] = group_size_bound(regime, 1, query.M, query.alpha, query.gamma)
    scenario = query.scenario.value
    return [
        CostRecord(
            scenario=scenario,
            method='hybrid',
            quantity='u_psi_queries',
            expression=optimum.expression,
            value=optimum.cost,
            note=f"value is C(K*) at K*={optimum.K_star:.6g}",
            extras=extras,
        ),
        make_record(
            scenario, 'gradient', 'u_psi_queries', _tilde({'M': 0.5, 'eps': -1}),
            {'M': query.M, 'eps': query.epsilon},
        ),
    ]


def _tradeoff_records(query: CostQuery) -> List[CostRecord]:
    query.require('M', 'N', 'epsilon', 'g')
    point = tradeoff_groups(query.M, query.N, query.epsilon, query.g)
    values = {'M': query.M, 'N': query.N, 'eps': query.epsilon, 'g': query.g}
    records = [
        make_record(query.scenario.value, 'grouped_gradient', quantity, expression, values)
        for quantity, expression in tradeoff_expressions().items()
    ]
    cost_logger.debug(f"Trade-off at g={point.g}: queries={point.queries:.4g}, qubits={point.qubits:.4g}")
    return records


_HANDLERS = {
    CostScenario.COMMUTING: _expectation_records,
    CostScenario.NONCOMMUTING: _expectation_records,
    CostScenario.KRDM: _krdm_records,
    CostScenario.CORRELATION: _correlation_records,
    CostScenario.HYBRID_EXP: _hybrid_records,
    CostScenario.HYBRID_POLY: _hybrid_records,
    CostScenario.TRADEOFF: _tradeoff_records,
}


def _as_query(scenario: Union[CostScenario, str], params: Mapping[str, Any]) -> CostQuery:
    try:
        return CostQuery(scenario=scenario, **dict(params))
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first['loc'])
        raise PlanError(f"{where}: {first['msg']}") from None


def query_cost(scenario: Union[CostScenario, str], params: Optional[Mapping[str, Any]] = None) -> CostReport:
    """
    Leading-order costs for one scenario

    Args:
        scenario: One of commuting, noncommuting, kRDM, correlation,
            hybrid-exp, hybrid-poly, tradeoff
        params: Scenario parameters (M, N, k, epsilon, delta, bounds, B_bar,
            g, alpha, gamma, spacing, times)

    Returns:
        CostReport holding one record per (method, quantity)
    """
    query = _as_query(scenario, params or {})
    records = _HANDLERS[query.scenario](query)
    cost_logger.info(f"Cost query '{query.scenario.value}': {len(records)} records")
    return CostReport(
        scenario=query.scenario,
        params=query.model_dump(exclude={'scenario'}, exclude_none=True),
        records=records,
    )
