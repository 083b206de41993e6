"""Exception types raised by the library."""


class GaussHypError(ArithmeticError):
    """Base class for every numerical failure signalled by the package."""


class PoleError(GaussHypError):
    """Evaluation at a pole (Gamma at a nonpositive integer, tan at a half-integer)."""


class DomainError(GaussHypError, ValueError):
    """Arguments outside the domain accepted by a routine."""


class NoConvergenceError(GaussHypError):
    """A series or iteration hit its term/iteration cap."""


class VanishingStateError(GaussHypError, ValueError):
    """PTG pole with N = nu for integer nu: the wave function is identically zero."""


class PathUnsafeError(GaussHypError):
    """The ODE oracle path would integrate a rapidly decreasing solution."""


class DivergentNormError(GaussHypError):
    """PTG pole whose normalization formula sits on a Gamma pole."""
