"""Exception types shared across the package.

Everything derives from ValueError so callers that do not care about the
distinction can catch one thing; the CLI maps these to exit code 2 unless a
verification produced witnesses, which is exit code 1.
"""

from __future__ import annotations


class AffineStratError(ValueError):
    """Base class for all package errors."""


class DimensionMismatch(AffineStratError):
    """Operands live in different ambient dimensions."""


class EmptyInputError(AffineStratError):
    """An operation that needs a nonempty object received an empty one."""


class GuardViolation(AffineStratError):
    """A desk-scale or structural guard (dimension, pointedness, budget) failed."""


class InsufficientWindow(AffineStratError):
    """The solved or enumerated window is too small to answer the query."""


class InputFormatError(AffineStratError):
    """Serialized input is malformed or carries an unknown schema version."""
