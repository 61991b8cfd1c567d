"""Exception hierarchy shared by all modules."""


class PottsError(Exception):
    """Base class for errors raised by this package."""


class GraphFormatError(PottsError):
    """Malformed graph input (file or constructor arguments)."""


class InvalidRootError(PottsError):
    """Operation requires a free root vertex."""


class BudgetExceededError(PottsError):
    """Exact enumeration would exceed the configured budget."""


class UndefinedMeasureError(PottsError):
    """Z_G(w) = 0, so the Gibbs measure does not exist."""


class ZeroRatioError(PottsError):
    """A restricted partition function vanishes at the evaluation point."""


class BranchError(PottsError):
    """A ratio landed on the closed negative real axis; the principal
    log branch is ambiguous there."""


class PoleError(PottsError):
    """P or Q (or a polynomial being log-expanded) vanishes."""


class DomainError(PottsError):
    """Parameters violate the regime a bound formula requires."""


class StepTooLargeError(PottsError):
    """A Taylor step exceeds the certified convergence radius."""


class CannotInterpolateError(PottsError):
    """No positive zero-free margin around [0,1]; interpolation refused."""
