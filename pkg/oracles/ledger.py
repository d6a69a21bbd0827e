"""
Query and resource accounting
"""
import math
from typing import Dict, Mapping

from pydantic import BaseModel, Field, computed_field

from utils.errors import BudgetError


class ExtractionLedger(BaseModel):
    """Simulation effort spent reading f out of the oracles.

    Kept apart from the modeled algorithm cost: these are classical
    evaluations a real device would never perform.
    """
    f_evaluations: int = 0
    circuit_readouts: int = 0


class ResourceLedger(BaseModel):
    """Counters for one run; every field only ever grows"""
    u_psi_queries: int = 0
    probability_oracle_queries: int = 0
    phase_oracle_queries: int = 0
    controlled_evolution_count: Dict[str, int] = Field(default_factory=dict)
    total_evolution_duration: Dict[str, float] = Field(default_factory=dict)
    qubit_high_water: int = 0
    repetitions: int = 0
    unit_phase_queries: int = 0
    precision_multiplier: int = 0
    extraction: ExtractionLedger = Field(default_factory=ExtractionLedger)

    @computed_field
    @property
    def u_psi_per_repetition(self) -> float:
        """U_psi queries of one estimator repetition; the quantity that scales as sqrt(M)"""
        return self.u_psi_queries / self.repetitions if self.repetitions else float(self.u_psi_queries)

    def note_repetition(self, count: int = 1):
        self.repetitions += int(count)

    def note_qubits(self, count: int):
        self.qubit_high_water = max(self.qubit_high_water, int(count))

    def charge_u_psi(self, count: int = 1):
        if count < 0:
            raise BudgetError(f"Cannot charge a negative number of queries ({count})")
        self.u_psi_queries += int(count)

    def charge_probability_oracle(
        self,
        evolution_counts: Mapping[str, int],
        evolution_durations: Mapping[str, float],
        times: int = 1,
    ):
        """
        Charge ``times`` invocations of a probability oracle

        Args:
            evolution_counts: Controlled evolutions per observable id, per invocation
            evolution_durations: Sum of |x| per observable id, per invocation
            times: Number of invocations
        """
        if times < 0:
            raise BudgetError(f"Cannot charge a negative number of invocations ({times})")
        self.probability_oracle_queries += times
        # one U_psi per invocation inside the Hadamard test
        self.u_psi_queries += times
        for key, count in evolution_counts.items():
            self.controlled_evolution_count[key] = self.controlled_evolution_count.get(key, 0) + count * times
        for key, duration in evolution_durations.items():
            self.total_evolution_duration[key] = (
                self.total_evolution_duration.get(key, 0.0) + abs(duration) * times
            )

    def charge_phase_oracle(
        self,
        unit_queries: int,
        multiplier: int,
        evolution_counts: Mapping[str, int],
        evolution_durations: Mapping[str, float],
    ):
        """One fractional phase application of ``unit_queries`` unit phase queries,
        each converted from ``multiplier`` probability-oracle invocations"""
        total = int(unit_queries) * int(multiplier)
        self.phase_oracle_queries += total
        self.unit_phase_queries += int(unit_queries)
        self.precision_multiplier = max(self.precision_multiplier, int(multiplier))
        self.charge_probability_oracle(evolution_counts, evolution_durations, times=total)

    def charge_extraction(self, f_evaluations: int = 0, circuit_readouts: int = 0):
        self.extraction.f_evaluations += int(f_evaluations)
        self.extraction.circuit_readouts += int(circuit_readouts)

    def merge(self, other: "ResourceLedger") -> "ResourceLedger":
        """Sequential composition: counts add, the qubit high-water mark is a max"""
        counts = dict(self.controlled_evolution_count)
        for key, value in other.controlled_evolution_count.items():
            counts[key] = counts.get(key, 0) + value
        durations = dict(self.total_evolution_duration)
        for key, value in other.total_evolution_duration.items():
            durations[key] = durations.get(key, 0.0) + value
        return ResourceLedger(
            u_psi_queries=self.u_psi_queries + other.u_psi_queries,
            probability_oracle_queries=self.probability_oracle_queries + other.probability_oracle_queries,
            phase_oracle_queries=self.phase_oracle_queries + other.phase_oracle_queries,
            controlled_evolution_count=counts,
            total_evolution_duration=durations,
            qubit_high_water=max(self.qubit_high_water, other.qubit_high_water),
            repetitions=self.repetitions + other.repetitions,
            unit_phase_queries=self.unit_phase_queries + other.unit_phase_queries,
            precision_multiplier=max(self.precision_multiplier, other.precision_multiplier),
            extraction=ExtractionLedger(
                f_evaluations=self.extraction.f_evaluations + other.extraction.f_evaluations,
                circuit_readouts=self.extraction.circuit_readouts + other.extraction.circuit_readouts,
            ),
        )


def conversion_multiplier(planned_queries: float, epsilon: float) -> int:
    """Probability-oracle invocations per unit phase query, ceil(log2(Q/eps))"""
    if planned_queries <= 0 or epsilon <= 0:
        raise BudgetError(f"Need positive planned queries and accuracy, got {planned_queries}, {epsilon}")
    return max(1, math.ceil(math.log2(planned_queries / epsilon)))
