"""
Exceptions raised by solvers, reductions and the file format.

Infeasible instances are not errors: exact solvers return None for them.
These exceptions cover violated preconditions, exhausted budgets and bad input.
"""


class PathColoringError(ValueError):
    """Base class; subclasses ValueError so generic callers can catch bad input."""


class BudgetExceeded(PathColoringError):
    """A search or DP would exceed its configured size limit."""


class NotSinglePath(PathColoringError):
    """The operation is only defined for a single path."""


class NotEndPrecolored(PathColoringError):
    """Precolored vertices do not form a prefix and a suffix of the path."""


class TooFewColors(PathColoringError):
    """The approximation needs at least d + 2 colors."""


class Infeasible(PathColoringError):
    """A repair step found no valid coloring for a constrained segment."""


class DemandsUnsupported(PathColoringError):
    """Demands were given to a solver for the demand-free problem."""


class ConstraintConflict(PathColoringError):
    """Two positional constraints fix the same position to different letters."""


class InconsistentConstraints(ConstraintConflict):
    """ConstraintConflict as reported by the brute-force word oracle."""


class PositionOutOfRange(PathColoringError):
    """A positional constraint lies beyond the end of every admissible word."""


class NotNormalized(PathColoringError):
    """Lists at the path ends are not duplicated (L(v1) = L(v2), L(vn-1) = L(vn))."""


class NotNonAlternating(PathColoringError):
    """Some color is missing from a list while present on both neighbours."""


class InvalidRepresentation(PathColoringError):
    """Interval endpoints are not pairwise distinct integers in 0..n^2."""


class ParseError(PathColoringError):
    """Malformed instance or solution text."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class SemanticError(PathColoringError):
    """Well-formed text describing an invalid instance."""


class MissingDemands(PathColoringError):
    """A demand-driven solver was given a demand-free (DPE or DLC) instance."""
