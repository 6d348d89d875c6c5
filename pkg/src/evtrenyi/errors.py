"""Exception hierarchy shared by every module."""


class EvtError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EvtError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class PreconditionError(EvtError, ValueError):
    """A documented precondition of an operation does not hold."""


class NoConvergenceError(EvtError, ArithmeticError):
    """An iterative routine exhausted its budget without meeting its tolerance."""


class DivergenceError(EvtError, ArithmeticError):
    """An integral is (numerically or analytically) divergent."""


class DegenerateTailError(EvtError, ArithmeticError):
    """The survival function underflowed to zero where a positive value is needed."""


class IntegrandError(EvtError, ArithmeticError):
    """The integrand produced a NaN or an infinite value."""


class ConfigError(EvtError, ValueError):
    """Invalid experiment configuration."""
