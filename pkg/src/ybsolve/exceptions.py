"""
Exception hierarchy for ybsolve.

Errors that describe malformed input also derive from ValueError so callers
validating data can catch them the usual way.
"""

from typing import Optional, Sequence


class YBSolveError(Exception):
    """Base class for every error raised by ybsolve."""


class PermutationError(YBSolveError, ValueError):
    """Invalid permutation data or cycle notation."""


class QuadraticSetError(YBSolveError, ValueError):
    """Malformed action tables, indices or subsets."""


class PartitionError(YBSolveError, ValueError):
    """A partition is not a disjoint cover, or a part is not invariant."""


class NotAutomorphismError(YBSolveError, ValueError):
    """A permutation offered as an automorphism fails the automorphism test."""

    def __init__(self, message: str, witness: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.witness = tuple(witness) if witness is not None else None


class InvalidLinearParamsError(YBSolveError, ValueError):
    """Parameters of the ring construction do not give a solution."""

    def __init__(self, message: str, obstruction: Optional[int] = None):
        super().__init__(message)
        self.obstruction = obstruction


class YbsParseError(YBSolveError, ValueError):
    """Syntax or content error in a ybs solution file."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


class NotSymmetricError(YBSolveError):
    """The operation needs a nondegenerate involutive braided set."""


class LriError(YBSolveError):
    """The operation needs the lri property (right actions inverse to left)."""


class MplUndefinedError(YBSolveError):
    """The solution is not a multipermutation solution."""


class NotSolvableError(YBSolveError):
    """The permutation group is not solvable."""


class StuLawError(YBSolveError):
    """Cross actions violate the strong twisted union laws."""

    def __init__(self, message: str, law: str, witness: Sequence[int]):
        super().__init__(f"{message} ({law} fails at {tuple(witness)})")
        self.law = law
        self.witness = tuple(witness)


class BoundExceededError(YBSolveError):
    """A configured search or size bound would be exceeded."""

    def __init__(self, message: str, setting: Optional[str] = None):
        if setting:
            message = f"{message}; raise YBSOLVE_{setting.upper()} to allow it"
        super().__init__(message)
        self.setting = setting


class DepthError(BoundExceededError):
    """Recursion depth of a construction family exceeds the configured maximum."""


class ConsistencyError(YBSolveError):
    """A post-condition guaranteed by theory failed; indicates a bug."""


class NotAbelianError(YBSolveError, ValueError):
    """The operation needs an abelian group."""


class FamilyUsageError(YBSolveError, ValueError):
    """Unknown construction family or malformed family arguments."""
