"""Exception hierarchy.

DomainError covers every failure of a mathematical precondition (bad input,
unattainable construction, inconsistent data).  The command line maps it to
exit code 3; usage errors stay with argparse and exit code 2.
"""


class DomainError(ValueError):
    """A mathematical precondition was violated."""


class NotCyclicError(DomainError):
    """The quintic field could not be certified cyclic over Q."""


class DegenerateOrbitError(DomainError):
    """The conjugate point orbit does not span the expected linear systems."""


class RationalityFailureError(DomainError):
    """The number of rational line products differs from two."""


class EnumerationBoundError(DomainError):
    """Requested prime exceeds the configured enumeration bound."""


class ChartError(DomainError):
    """A chart identity or bijectivity check failed."""


class FiberInconsistencyError(DomainError):
    """Fiber evidence contradicts the splitting-based prediction."""


class UnknownModelError(DomainError):
    """Unrecognized fixture name or unusable model input."""
