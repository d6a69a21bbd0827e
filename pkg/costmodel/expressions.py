"""
Leading-order cost expressions: structured symbolic data plus numeric value
"""
import math
from typing import Dict, List, Mapping, Optional

from pydantic import BaseModel, Field

from utils.config import config
from utils.errors import PlanError


def _log(value: float) -> float:
    """Logarithm in the configured base, floored at 1"""
    if value <= 0:
        raise PlanError(f"Logarithm argument must be positive, got {value}")
    return max(1.0, math.log(value, config.gradient.log_base))


def _power(symbol: str, exponent: float) -> str:
    if exponent == 1:
        return symbol
    if exponent == 0.5:
        return f"sqrt({symbol})"
    return f"{symbol}^{exponent:g}"


class CostTerm(BaseModel):
    """coefficient * prod symbol^power * prod log(arg)^p * prod loglog(arg)^q"""
    coefficient: float = 1.0
    powers: Dict[str, float] = Field(default_factory=dict)
    log_powers: Dict[str, float] = Field(default_factory=dict)
    loglog_powers: Dict[str, float] = Field(default_factory=dict)

    def evaluate(self, values: Mapping[str, float]) -> float:
        value = self.coefficient
        try:
            for symbol, exponent in self.powers.items():
                value *= float(values[symbol]) ** exponent
            for argument, exponent in self.log_powers.items():
                value *= _log(float(values[argument])) ** exponent
            for argument, exponent in self.loglog_powers.items():
                value *= _log(_log(float(values[argument]))) ** exponent
        except KeyError as e:
            raise PlanError(f"No value for symbol {e.args[0]!r}") from None
        return value

    def render(self) -> str:
        numerator = [_power(s, p) for s, p in self.powers.items() if p > 0]
        numerator += [_power(f"log({a})", p) for a, p in self.log_powers.items()]
        numerator += [_power(f"loglog({a})", p) for a, p in self.loglog_powers.items()]
        denominator = [_power(s, -p) for s, p in self.powers.items() if p < 0]
        if self.coefficient != 1 or not numerator:
            numerator.insert(0, f"{self.coefficient:g}")
        text = "*".join(numerator)
        if denominator:
            joined = "*".join(denominator)
            text += f"/{joined}" if len(denominator) == 1 else f"/({joined})"
        return text


class CostExpression(BaseModel):
    """Sum of terms; ``tilde`` marks O~ (polylog factors hidden) instead of O"""
    terms: List[CostTerm]
    tilde: bool = False

    @classmethod
    def monomial(
        cls,
        powers: Optional[Dict[str, float]] = None,
        logs: Optional[Dict[str, float]] = None,
        loglogs: Optional[Dict[str, float]] = None,
        coefficient: float = 1.0,
        tilde: bool = False,
    ) -> "CostExpression":
        term = CostTerm(
            coefficient=coefficient,
            powers=powers or {},
            log_powers=logs or {},
            loglog_powers=loglogs or {},
        )
        return cls(terms=[term], tilde=tilde)

    def evaluate(self, values: Mapping[str, float]) -> float:
        return float(sum(term.evaluate(values) for term in self.terms))

    def render(self) -> str:
        body = " + ".join(term.render() for term in self.terms)
        return f"{'O~' if self.tilde else 'O'}({body})"

    def __str__(self) -> str:
        return self.render()


class CostRecord(BaseModel):
    """One (method, quantity) cell of a cost comparison"""
    scenario: str
    method: str
    quantity: str
    expression: CostExpression
    value: float
    constants_known: bool = False
    note: Optional[str] = None
    extras: Dict[str, float] = Field(default_factory=dict)

    @property
    def symbolic(self) -> str:
        return self.expression.render()

    def to_row(self) -> Dict[str, object]:
        return {
            'scenario': self.scenario,
            'method': self.method,
            'quantity': self.quantity,
            'expression': self.symbolic,
            'value': self.value,
            'constants': 'known' if self.constants_known else 'up to constants',
            'note': self.note or "",
        }


def make_record(
    scenario: str,
    method: str,
    quantity: str,
    expression: CostExpression,
    values: Mapping[str, float],
    constants_known: bool = False,
    note: Optional[str] = None,
    extras: Optional[Dict[str, float]] = None,
) -> CostRecord:
    return CostRecord(
        scenario=scenario,
        method=method,
        quantity=quantity,
        expression=expression,
        value=expression.evaluate(values),
        constants_known=constants_known,
        note=note,
        extras=extras or {},
    )
