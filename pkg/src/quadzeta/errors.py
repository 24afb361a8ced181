"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes): domain errors
(the requested point is outside the mathematical domain, e.g. a pole) and
numerical failures (the algorithm could not certify its answer).
"""


class QuadZetaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QuadZetaError):
    """The input lies outside the mathematical domain of the operation."""


class NumericalError(QuadZetaError):
    """The computation ran but could not certify a trustworthy result."""


class PoleAtOne(DomainError):
    """Evaluation requested at (or too close to) the simple pole s = 1."""


class PoleAtNonPositiveInteger(DomainError):
    """Gamma evaluation at (or too close to) a non-positive integer."""


class DenominatorZero(DomainError):
    """A ratio was requested where its denominator vanishes."""


class BracketFailure(DomainError):
    """A root bracket had equal signs at both endpoints."""


class NoSignChange(DomainError):
    """A scan found no sign change where a zero was requested."""


class TruncationFailure(NumericalError):
    """A series head would exceed the configured term budget."""


class SingularityInDisk(NumericalError):
    """A quadrature node for a Cauchy-integral derivative failed to evaluate."""


class ZeroOnBoundary(NumericalError):
    """A contour passes too close to a zero for a safe winding count."""


class NonIntegerWinding(NumericalError):
    """The accumulated boundary phase does not snap to an integer."""


class UnresolvedCluster(NumericalError):
    """A minimal subdivision cell still contains two or more zeros."""
