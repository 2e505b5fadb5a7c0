"""Exception and warning types shared across hypolib modules."""


class HypolibError(Exception):
    """Base class for all hypolib-specific errors."""


class NonConvergence(HypolibError):
    """Quadrature failed to stabilize under node doubling."""

    def __init__(self, message, last_estimates=None):
        super().__init__(message)
        self.last_estimates = tuple(last_estimates or ())


class SlowConvergence(HypolibError):
    """Series argument too close to 1 for the requested accuracy."""


class MaxTerms(HypolibError):
    """Series hit the term cap before meeting the stopping rule."""


class StencilOutOfDomain(HypolibError):
    """A finite-difference stencil point left the open unit disk."""


class ChainBroken(HypolibError):
    """Reduction chain did not terminate at the constant polynomial 1."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NormalizationUnavailable(HypolibError):
    """Spherical-function normalization undefined or numerically zero here."""


class DecayViolation(HypolibError):
    """Normalized-kernel band supremum failed to decrease along a sweep."""


class RatioDiverging(HypolibError):
    """Maximal-function ratio kept growing under net refinement."""


class PositivityViolation(HypolibError):
    """A quantity that must be positive was not, beyond tolerance."""


class ScanInconclusive(HypolibError):
    """Zero-free-radius scan found dips persisting arbitrarily close to 1."""


class FitResidualLarge(HypolibError):
    """Least-squares residual exceeded the acceptance threshold."""


class FitFailed(HypolibError):
    """No polynomial within the degree budget met the target band."""


class TruncationWarning(UserWarning):
    """A truncated pairing or series dropped more mass than the tolerance."""


class PrecisionLoss(UserWarning):
    """An angle reduction exceeded available precision; term skipped."""
