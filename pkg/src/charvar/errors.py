"""Exception hierarchy shared by all charvar modules."""


class CharvarError(Exception):
    """Base class for all charvar errors."""


class InvalidInputError(CharvarError, ValueError):
    """A precondition on the input was violated."""


class NotSymmetricError(InvalidInputError):
    """Laurent polynomial is not invariant under m -> 1/m."""


class DegeneratePairError(InvalidInputError):
    """Both matrices of a pair are +-I; the pair carries no geometry."""


class ZeroTranslationError(InvalidInputError):
    """Translation length requested for a non-loxodromic isometry."""


class ConsistencyError(CharvarError):
    """Two independent computations of the same quantity disagree.

    This is a hard failure: it signals a bug or a broken structural
    assumption, never a condition to be silently resolved.
    """
