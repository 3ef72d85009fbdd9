"""Exception hierarchy shared by all mlfilt modules."""


class MLFilterError(Exception):
    """Base class for every error raised by mlfilt."""


class DomainError(MLFilterError, ValueError):
    """An argument lies outside the supported domain."""


class ConvergenceError(MLFilterError, ArithmeticError):
    """A series or expansion did not reach the requested accuracy within its term cap."""


class AccuracyError(MLFilterError, ArithmeticError):
    """The asymptotic expansion cannot meet the tolerance at this argument."""


class SizeError(MLFilterError, ValueError):
    """A sampled kernel would exceed the configured maximum number of taps."""


class GridMismatch(MLFilterError, ValueError):
    """Signal and kernel are sampled on different steps."""


class NumericalError(MLFilterError, ArithmeticError):
    """Edge normalization hit a (near) zero denominator."""
