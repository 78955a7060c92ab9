"""Exception types shared across the package.

The CLI maps ``ValueError`` subclasses (bad input, bad config) to exit
code 1 and ``ArithmeticError`` subclasses (numerical failure) to exit
code 2, so new error types should slot into one of those families.
"""


class PauliParseError(ValueError):
    """A Pauli label contains a character outside {I, X, Y, Z}."""


class ResourceLimitError(ValueError):
    """A requested qubit count exceeds the configured resource bound."""


class ConfigError(ValueError):
    """A run configuration is malformed or inconsistent."""


class BranchCutError(ArithmeticError):
    """An eigenvalue sits too close to the principal logarithm's branch cut."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature missed its tolerance within the evaluation budget.

    Carries the best estimate computed so far in ``best`` (a
    ``QuadratureResult``), or ``None`` if no refinement level completed.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
