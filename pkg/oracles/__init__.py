"""Oracle stack: state preparation, U(x), Hadamard test, probability and phase oracles"""

from .ledger import ResourceLedger, ExtractionLedger, conversion_multiplier
from .state_prep import StatePrepOracle
from .parameterized import (
    HadamardVariant,
    ParameterizedUnitary,
    Rotation,
    Fixed,
    build_U_of_x,
    f_analytic,
    f_batch,
    f_from_overlap,
)
from .hadamard import HadamardTest, build_F
from .probability import (
    ProbabilityOracle,
    build_probability_oracle,
    index_layout,
    index_register_names,
    shift_angles,
)
from .phase import OracleKind, OracleMode, PhaseOracle, apply_phase_oracle, grid_points, phase_query_cost

__all__ = [
    'ResourceLedger',
    'ExtractionLedger',
    'conversion_multiplier',
    'StatePrepOracle',
    'HadamardVariant',
    'ParameterizedUnitary',
    'Rotation',
    'Fixed',
    'build_U_of_x',
    'f_analytic',
    'f_batch',
    'f_from_overlap',
    'HadamardTest',
    'build_F',
    'ProbabilityOracle',
    'build_probability_oracle',
    'index_layout',
    'index_register_names',
    'shift_angles',
    'OracleKind',
    'OracleMode',
    'PhaseOracle',
    'apply_phase_oracle',
    'phase_query_cost',
    'grid_points',
]
