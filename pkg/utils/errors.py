"""
Exception types raised across gradeval
"""
from typing import Optional


class GradevalError(ValueError):
    """Base class for all gradeval errors"""


class UnitaryError(GradevalError):
    """Matrix is not unitary or not Hermitian within tolerance"""


class RegisterError(GradevalError):
    """Bad register name, qubit index or dimension"""


class NormalizationError(GradevalError):
    """State norm drifted beyond tolerance"""


class PlanError(GradevalError):
    """Invalid algorithm parameters"""


class BudgetError(GradevalError):
    """Qubit or query budget cannot be met"""


class ConfigError(GradevalError):
    """Run configuration could not be parsed or validated"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)
