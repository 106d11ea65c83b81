"""Exception hierarchy shared by all frobpush modules.

Domain errors (bad mathematical input) and regime errors (input outside
the range where a closed form is valid) are kept distinct because the
command line maps them to different exit codes.
"""


class FrobpushError(Exception):
    """Base class for all computation-domain errors."""


class InvalidParameterError(FrobpushError):
    """A precondition on a numeric parameter was violated."""


class OutOfRegimeError(FrobpushError):
    """Input is valid but outside the regime where this formula applies."""


class LatticeMismatchError(FrobpushError):
    """Two classes (or a class and a decomposition) live in different lattices."""


class RankUndefinedError(FrobpushError):
    """Rank requested for a support-only decomposition."""


class DeterminantUnsupportedError(FrobpushError):
    """Determinant requested for a decomposition with non-line summands."""


class NotFSplitError(FrobpushError):
    """No trivial summand to remove; the decomposition is not split-compatible."""


class UnsupportedConeError(FrobpushError):
    """Ample/nef classification requested on a variety with no implemented cone."""
