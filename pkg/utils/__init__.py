"""Utility modules for gradeval"""

from .config import config
from .logger import (
    setup_logger,
    set_level,
    main_logger,
    sim_logger,
    oracle_logger,
    gradient_logger,
    pipeline_logger,
    cost_logger,
)
from .errors import (
    GradevalError,
    UnitaryError,
    RegisterError,
    NormalizationError,
    PlanError,
    BudgetError,
    ConfigError,
)

__all__ = [
    'config',
    'setup_logger',
    'set_level',
    'main_logger',
    'sim_logger',
    'oracle_logger',
    'gradient_logger',
    'pipeline_logger',
    'cost_logger',
    'GradevalError',
    'UnitaryError',
    'RegisterError',
    'NormalizationError',
    'PlanError',
    'BudgetError',
    'ConfigError',
]
