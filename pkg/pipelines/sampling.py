"""
Naive prepare-and-measure baseline
"""
from typing import Any, Dict, List, Optional

import numpy as np

from operators import ObservableSet
from oracles import ResourceLedger, StatePrepOracle
from simcore.state import RandomSource, as_generator
from utils.errors import BudgetError
from .base_pipeline import BasePipeline


class SamplingBaseline(BasePipeline):
    """
    Per-observable empirical means from repeated preparation of |psi>.

    Observables diagonal in the computational basis share one group and are
    read from the same shots; every other observable is measured alone in its
    eigenbasis. Each shot costs one U_psi query and the budget is split evenly
    across groups.
    """

    def __init__(self, obs_set: ObservableSet, psi_oracle: StatePrepOracle):
        super().__init__(name="SamplingBaseline", role="Statistical sampling baseline")
        self.obs_set = obs_set
        self.psi_oracle = psi_oracle
        self.diagonal: List[int] = []
        self.groups = self._group()

    def _group(self) -> List[List[int]]:
        diagonal, other = self.diagonal, []
        for j, obs in enumerate(self.obs_set):
            off = obs.matrix - np.diag(np.diag(obs.matrix))
            (diagonal if np.max(np.abs(off)) < 1e-12 else other).append(j)
        groups = [diagonal] if diagonal else []
        return groups + [[j] for j in other]

    def estimate(self, budget: int, rng: RandomSource, ledger: Optional[ResourceLedger] = None) -> np.ndarray:
        """
        Estimates for all observables using at most ``budget`` preparations

        Args:
            budget: Total U_psi queries
            rng: Random stream or generator
            ledger: Optional ledger charged one U_psi query per shot

        Returns:
            Array of M estimates
        """
        if budget < len(self.groups):
            raise BudgetError(f"Budget {budget} cannot cover {len(self.groups)} measurement groups")
        generator = as_generator(rng)
        shots = int(budget) // len(self.groups)
        psi = self.psi_oracle.psi
        estimates = np.zeros(self.obs_set.M)
        for group in self.groups:
            if group[0] in self.diagonal:
                counts = generator.multinomial(shots, self._probabilities(np.abs(psi) ** 2))
                for j in group:
                    estimates[j] = counts @ np.diag(self.obs_set[j].matrix).real / shots
            else:
                values, vectors = self.obs_set[group[0]].eigensystem()
                weights = np.abs(vectors.conj().T @ psi) ** 2
                counts = generator.multinomial(shots, self._probabilities(weights))
                estimates[group[0]] = counts @ values / shots
        if ledger is not None:
            ledger.charge_u_psi(shots * len(self.groups))
        return estimates

    @staticmethod
    def _probabilities(weights: np.ndarray) -> np.ndarray:
        weights = np.clip(weights, 0.0, None)
        return weights / weights.sum()

    def execute(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        ledger = ResourceLedger()
        estimates = self.estimate(int(inputs['budget']), inputs['rng'], ledger)
        references = self.obs_set.expectations(self.psi_oracle.psi)
        return {
            'estimates': estimates.tolist(),
            'references': references.tolist(),
            'errors': np.abs(estimates - references).tolist(),
            'ledger': ledger,
        }
