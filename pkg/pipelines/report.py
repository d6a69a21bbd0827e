"""
Estimation report schema
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from gradient import GradientPlan
from oracles import ResourceLedger
from utils.config import config


class EstimationReport(BaseModel):
    """Estimates next to dense reference values, with the plan and ledger that produced them"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default_factory=lambda: config.schema_version, alias="schema")
    task: str
    mode: str
    seed: int
    ids: List[str]
    estimates: List[float]
    references: List[float]
    errors: List[float]
    success: bool
    epsilon: float
    plan: Optional[GradientPlan] = None
    ledger: ResourceLedger = Field(default_factory=ResourceLedger)
    raw_outcomes: List[List[int]] = Field(default_factory=list)
    per_repetition: List[List[float]] = Field(default_factory=list)
    convention: Optional[str] = None
    extras: Dict[str, Any] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict)

    @classmethod
    def from_values(cls, estimates, references, epsilon: float, **fields) -> "EstimationReport":
        estimates = [float(v) for v in estimates]
        references = [float(v) for v in references]
        errors = [abs(e - r) for e, r in zip(estimates, references)]
        return cls(
            estimates=estimates,
            references=references,
            errors=errors,
            success=max(errors) <= epsilon,
            epsilon=epsilon,
            **fields,
        )

    @property
    def max_error(self) -> float:
        return max(self.errors)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        data = self.model_dump(by_alias=True, mode="json")
        if not include_timings:
            data.pop("timings", None)
        return data

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
