"""Exception hierarchy shared by every module."""


class DeltaLPError(Exception):
    """Base class for all library errors."""


class PrecisionExhausted(DeltaLPError):
    """Certification failed even at the configured maximum precision."""


class AmbiguousDegree(DeltaLPError):
    """The leading coefficient interval of a polynomial straddles zero."""


class DomainError(DeltaLPError, ValueError):
    """An argument lies outside the domain of an operation."""


class BracketFailure(DeltaLPError):
    """A sign change could not be located in the expanded search window."""


class WindowMismatch(DeltaLPError, ValueError):
    """A polynomial and the sequence window it claims to come from disagree."""


class BranchJumpDetected(DeltaLPError):
    """Adjacent curve samples could not be stitched to a consistent branch."""


class GridMismatch(DeltaLPError, ValueError):
    """Two curve families do not share a grid or a step size."""


class SignChangeDetected(DeltaLPError):
    """A function assumed zero-free changed sign on the sampled range."""
