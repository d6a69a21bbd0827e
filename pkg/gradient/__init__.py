"""Gradient estimation engine"""

from .aggregate import repetitions_for, median_aggregate
from .coefficients import difference_coefficients, moment
from .grid import GridPoint
from .plan import GradientPlan, solve_plan_uniform, solve_plan_general
from .algorithm import Algorithm1Runner, GradientEstimate, run_algorithm1, decode, decode_all

__all__ = [
    'repetitions_for',
    'median_aggregate',
    'difference_coefficients',
    'moment',
    'GridPoint',
    'GradientPlan',
    'solve_plan_uniform',
    'solve_plan_general',
    'Algorithm1Runner',
    'GradientEstimate',
    'run_algorithm1',
    'decode',
    'decode_all',
]
