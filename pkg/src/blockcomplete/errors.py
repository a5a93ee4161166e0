"""Exception types shared across the package."""

from __future__ import annotations


class BlockCompleteError(Exception):
    """Base class for every error raised by this package."""


class ShapeMismatch(BlockCompleteError, ValueError):
    pass


class NotSquare(BlockCompleteError, ValueError):
    pass


class Singular(BlockCompleteError, ValueError):
    """A square matrix failed to be invertible.

    ``kernel_vector`` is a nonzero column (a 1-column ``Mat``) that the matrix
    sends to zero, so the failure can be checked independently.
    """

    def __init__(self, message, rank, kernel_vector=None):
        super().__init__(message)
        self.rank = rank
        self.kernel_vector = kernel_vector


class NotInvertible(Singular):
    pass


class TooBig(BlockCompleteError, ValueError):
    """A source space does not embed into the target (source dim > target dim)."""


class DimMismatch(BlockCompleteError, ValueError):
    pass


class Infeasible(BlockCompleteError, ValueError):
    """No invertible completion exists; ``condition`` names the first failing check."""

    def __init__(self, condition, report=None):
        super().__init__(f"instance is infeasible: condition {condition!r} fails")
        self.condition = condition
        self.report = report


class NotEmbeddable(BlockCompleteError, ValueError):
    pass


class HypothesisViolated(BlockCompleteError, ValueError):
    def __init__(self, which):
        super().__init__(f"hypothesis violated: {which}")
        self.which = which


class TNotInvertible(BlockCompleteError, ValueError):
    pass


class UnsatisfiableBounds(BlockCompleteError, ValueError):
    pass


class SchemaError(BlockCompleteError, ValueError):
    """Malformed JSON payload. ``field`` is a dotted path to the offending value."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
