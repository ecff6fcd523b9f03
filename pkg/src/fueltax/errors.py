"""Exception hierarchy.

``ParameterError`` covers bad inputs (CLI exit code 2); everything deriving
from ``ComputationError`` is a numerical or model failure (exit code 3).
"""


class ParameterError(ValueError):
    """An input violates a documented invariant. ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ComputationError(RuntimeError):
    pass


class DegenerateElasticities(ComputationError):
    pass


class MissingIncome(ComputationError):
    pass


class CalibrationError(ComputationError):
    pass


class NoBracket(ComputationError):
    pass


class NonConvergence(ComputationError):
    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class DegenerateRegressor(ComputationError):
    pass


class LengthMismatch(ComputationError):
    pass


class InsufficientWindow(ComputationError):
    pass
