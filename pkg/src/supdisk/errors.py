"""Exception types shared across the package."""

from __future__ import annotations


class SupdiskError(Exception):
    """Base class for all package-specific errors."""


class AmbiguousPredicate(SupdiskError):
    """A continuous-mode predicate fell inside the guard band.

    Raised instead of guessing when the deciding quantity is nonzero but
    closer to the decision boundary than the guard tolerance.
    """


class ZeroVector(SupdiskError):
    """An angle was requested for a zero direction vector."""


class OutOfRange(SupdiskError):
    """A scalar argument lies outside its documented domain."""


class Infeasible(SupdiskError):
    """Two particles are closer than sup-distance 1.

    ``args[0]`` carries the offending pair of vertex indices.
    """

    def __init__(self, pair, message=None):
        self.pair = tuple(pair)
        super().__init__(message or f"points {self.pair} at sup-distance < 1")


class NotUnit(SupdiskError):
    """A direction that must be Euclidean-unit is not."""


class InvalidSelection(SupdiskError):
    """A face selection omits a crossed-square face or names a bad face."""


class NotPlanar(SupdiskError):
    """The triangular-lattice decomposition needs a crossing-free graph."""


class DegreeExceeded(SupdiskError):
    """A vertex degree exceeds the bound of the requested decomposition."""


class BudgetExceeded(SupdiskError):
    """A search ran out of its node or time budget before completing."""


class DegenerateTarget(SupdiskError):
    """A target polygon is too thin to host the requested particle count."""


class ParseError(SupdiskError):
    """A configuration document is malformed; message carries the position."""


class DuplicatePoint(SupdiskError):
    """A configuration contains the same point twice."""


class NonFinite(SupdiskError):
    """A continuous coordinate is NaN or infinite."""


class InvariantViolation(SupdiskError):
    """An identity that must always hold failed to hold.

    This always indicates a bug in the caller's input handling or in this
    package, never a property of valid data; it is therefore an error, not
    a report entry.
    """
