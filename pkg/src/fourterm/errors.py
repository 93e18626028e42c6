"""Exception hierarchy shared by all fourterm modules."""


class FourTermError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FourTermError, ValueError):
    """An argument lies outside the domain where a function is defined."""


class NegativeDiscriminant(FourTermError, ArithmeticError):
    """The zeta quadratic has no real roots where it must have two."""


class AsymptoteHit(FourTermError, ArithmeticError):
    """Evaluation landed on the vertical asymptote of zeta."""


class DegenerateRoots(FourTermError, ArithmeticError):
    """Two roots of the denominator cubic coincide within tolerance."""


class ZeroArgument(FourTermError, ValueError):
    """The closed form was asked to evaluate at z = 0."""


class ZeroPolynomial(FourTermError, ValueError):
    """Root finding was requested for the identically zero polynomial."""


class CountDeficit(FourTermError, RuntimeError):
    """Fewer counting-function zeros were located than the theory guarantees."""


class MatchFailure(FourTermError, RuntimeError):
    """Theta-side zeros and polynomial zeros could not be paired."""


class WitnessSearchFailure(FourTermError, RuntimeError):
    """No offset in the search schedule produced a valid non-real witness."""


class EmptyWindow(FourTermError, ValueError):
    """A sampling window does not intersect the zero interval."""
