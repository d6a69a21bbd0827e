"""Closed-form cost model: method comparisons, trade-offs, hybrid optima"""

from .expressions import CostExpression, CostRecord, CostTerm, make_record
from .tradeoffs import (
    HybridOptimum,
    HybridRegime,
    TradeoffPoint,
    group_size_bound,
    hybrid_cost,
    hybrid_optimum,
    poly_epsilon_exponent,
    tradeoff_groups,
)
from .queries import (
    CostQuery,
    CostReport,
    CostScenario,
    general_query_count,
    index_register_qubits,
    query_cost,
)
from .table import COLUMNS, cost_table, write_cost_csv

__all__ = [
    'CostExpression',
    'CostRecord',
    'CostTerm',
    'make_record',
    'HybridOptimum',
    'HybridRegime',
    'TradeoffPoint',
    'group_size_bound',
    'hybrid_cost',
    'hybrid_optimum',
    'poly_epsilon_exponent',
    'tradeoff_groups',
    'CostQuery',
    'CostReport',
    'CostScenario',
    'general_query_count',
    'index_register_qubits',
    'query_cost',
    'COLUMNS',
    'cost_table',
    'write_cost_csv',
]
