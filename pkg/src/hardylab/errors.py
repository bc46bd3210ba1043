"""Exception hierarchy shared by all hardylab modules."""


class HardyLabError(Exception):
    """Base class for every error raised by hardylab."""


class DomainError(HardyLabError, ValueError):
    """A point lies outside the domain of a map."""


class ParamError(HardyLabError, ValueError):
    """Invalid parameters for a catalog entry or operation."""


class UnknownCatalogEntry(HardyLabError, KeyError):
    """Name not present in a catalog."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UnknownFamily(UnknownCatalogEntry):
    pass


class ConvergenceError(HardyLabError, ArithmeticError):
    """A numerical limit failed to stabilise."""


class NoConvergence(ConvergenceError):
    pass


class DWMismatch(ConvergenceError):
    pass


class QuadratureError(ConvergenceError):
    pass


class DivergentIntegral(HardyLabError, ArithmeticError):
    """A line integral of |f|^p does not converge.

    ``alpha`` is the measured power-law decay exponent of the integrand
    (``-inf`` when the integrand overflowed).
    """

    def __init__(self, message, alpha=float("nan")):
        super().__init__(message)
        self.alpha = alpha


class MonotonicityViolation(HardyLabError):
    pass


class NotMember(HardyLabError, ValueError):
    pass


class RayDisagreement(ConvergenceError):
    pass


class InfimumMismatch(ConvergenceError):
    pass


class DivergenceDetected(ConvergenceError):
    """A non-tangential limit grows without bound."""


class PathThroughZero(HardyLabError, ArithmeticError):
    pass


class DegenerateMultiplier(HardyLabError, ArithmeticError):
    pass


class UnboundedOperator(HardyLabError, ValueError):
    pass


class NotApplicable(HardyLabError, ValueError):
    pass


class ModelUnavailable(HardyLabError):
    pass


class ConfigError(HardyLabError, ValueError):
    pass
