"""Exception hierarchy shared by every netop module."""

from __future__ import annotations


class NetopError(Exception):
    """Base class for all library errors."""


class ArityError(NetopError, ValueError):
    """Operands live at incompatible arities (or color words)."""


class CarrierError(NetopError, ValueError):
    """A value is not an element of the monoid / model it was handed to."""


class ProfileError(NetopError, ValueError):
    """An operad profile is empty, malformed, or does not match its operands."""


class ModelMismatch(NetopError, ValueError):
    """An element, operation or morphism was used with the wrong model."""


class ConstraintError(NetopError, ValueError):
    """An algebra element violates the constraint defining its algebra."""


class BudgetExceeded(NetopError):
    """An exhaustive enumeration would exceed the caller's budget."""


class TermError(NetopError):
    """Problem in a term of the CLI language.

    ``line``/``column`` locate syntax errors; ``path`` locates type errors
    inside the term tree (child indices from the root, e.g. ``root/2/1``).
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path is not None:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
