"""Exception types raised by polarmap."""


class PolarmapError(ValueError):
    """Base class for all polarmap errors."""


class NonHermitianError(PolarmapError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class UnphysicalError(PolarmapError):
    """A map or state has a negative eigenvalue beyond tolerance."""


class ZeroIntensityError(PolarmapError):
    """Zero (or vanishing) trace where a normalization is required."""


class ShapeError(PolarmapError):
    """An array or document has the wrong shape for its kind."""
