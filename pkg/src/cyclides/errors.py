"""Exception hierarchy shared by all cyclides modules."""


class CyclideError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CyclideError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class DivergentParameters(CyclideError, ValueError):
    """Hypergeometric parameters for which the series is undefined or diverges."""


class NoConvergence(CyclideError, ArithmeticError):
    """A series or quadrature refinement hit its cap before reaching tolerance."""


class SingularIntegrand(CyclideError, ArithmeticError):
    """The inverted-torus integrand is non-positive or non-finite on the grid."""


class DegenerateConfiguration(CyclideError, ValueError):
    """Circle-pair data that does not describe two mutually exterior circles."""


class OnTorus(CyclideError, ValueError):
    """An inversion center lies on the torus T_R (image is a round sphere)."""


class OutOfRange(CyclideError, ValueError):
    """A target isoperimetric ratio outside the interval with two witnesses."""


class RejectSquare(CyclideError, ValueError):
    """The square Clifford torus (R = sqrt 2) has no non-uniqueness witnesses."""


class ZeroDenominator(CyclideError, ZeroDivisionError):
    """A recurrence divided by a vanishing polynomial value."""
