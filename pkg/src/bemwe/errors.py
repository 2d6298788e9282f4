"""Exception hierarchy. Each class maps onto one CLI exit status."""


class BemweError(Exception):
    exit_code = 1


class InputError(BemweError, ValueError):
    """Malformed or missing input data (files, rows, cells)."""

    exit_code = 2


class DataError(InputError):
    """Data that parses but cannot enter the likelihood (e.g. a zero time)."""


class DomainError(BemweError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    exit_code = 3


class ConditioningError(DomainError):
    pass


class OverflowSignal(BemweError, OverflowError):
    """A ratio whose denominator vanished numerically (hazard at zero survival)."""

    exit_code = 3


class ConvergenceError(BemweError, ArithmeticError):
    """Iterative solver failed; ``iterates`` holds the path taken."""

    exit_code = 4

    def __init__(self, message, iterates=None):
        super().__init__(message)
        self.iterates = list(iterates or [])


class AccuracyError(BemweError, ArithmeticError):
    """Quadrature did not reach the requested tolerance."""

    exit_code = 5

    def __init__(self, message, estimate, error_bound):
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound
