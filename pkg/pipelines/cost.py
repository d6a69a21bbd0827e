"""
Cost-model queries run as a pipeline stage
"""
from typing import Any, Dict, List, Mapping, Sequence

from costmodel import CostReport, cost_table, query_cost
from .base_pipeline import BasePipeline


class CostPipeline(BasePipeline):
    """Evaluates a list of ``{scenario, params}`` cost queries"""

    def __init__(self, queries: Sequence[Mapping[str, Any]]):
        super().__init__(name="CostPipeline", role="Closed-form cost model")
        self.queries = list(queries)

    def execute(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        reports: List[CostReport] = [
            query_cost(query['scenario'], query.get('params', {})) for query in self.queries
        ]
        return {'reports': reports, 'table': cost_table(reports)}
