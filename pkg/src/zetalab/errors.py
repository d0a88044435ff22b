"""Exception hierarchy shared by all zetalab modules."""


class ZetalabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetalabError, ValueError):
    """Input outside an operation's declared domain."""


class CapacityError(ZetalabError):
    """Requested work exceeds a configured ceiling or segment size."""


class PoleError(DomainError):
    """Evaluation requested at the pole s = 1."""


class PrecisionError(ZetalabError):
    """Requested tolerance unreachable within the interval budget."""


class QuadratureError(ZetalabError):
    """Adaptive quadrature failed to meet tolerance within its budget."""

    def __init__(self, message, best=None, err_estimate=None):
        super().__init__(message)
        self.best = best
        self.err_estimate = err_estimate


class RefinementError(ZetalabError):
    """Zero refinement did not converge; carries the best iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class BoundaryError(ZetalabError):
    """Box boundary passes too close to a zero for reliable winding."""


class UnwrapError(ZetalabError):
    """Phase unwrapping could not be disambiguated on a box boundary."""


class OverflowRegimeError(ZetalabError):
    """Factorial-over-log coefficients exceed representable magnitude.

    Raised before any overflow happens; use a smaller expansion depth M.
    """


class FitError(ZetalabError):
    """Degenerate least-squares design."""


class ConfigError(ZetalabError):
    """Invalid run configuration (CLI exit code 2)."""
