# app/services/errors.py
"""Exception hierarchy shared by all qheis services."""

from typing import Optional


class QHeisError(Exception):
    """Base class for every error raised by the qheis services."""


class InvalidQ(QHeisError):
    """The deformation parameter violates q != 0 and {n}_q != 0 for n != 0."""


class ModeMismatch(QHeisError):
    """Operands were built over different QParam values."""


class NonCommuting(QHeisError):
    """An operation that needs PQ = QP received a non-commuting pair."""


class ZeroOrder(QHeisError):
    """The eliminant needs both elements to have order at least one."""


class ConstantPolynomial(QHeisError):
    """A polynomial that must be nonconstant was constant."""


class ZeroElement(QHeisError):
    """The operation is undefined for the zero element."""


class ConstantElement(QHeisError):
    """The operation needs a nonconstant element."""


class SymbolicModeUnsupported(QHeisError):
    """The operation is only available for a numeric (rational) q."""


class DegenerateWindow(QHeisError):
    """A Laurent window is too narrow for the requested computation."""


class DuplicateRoot(QHeisError):
    """Factored input listed the same root twice."""


class InvalidRoot(QHeisError):
    """Factored input contained a zero or malformed root."""


class ExprSyntaxError(QHeisError):
    """The expression DSL could not be parsed.

    Attributes:
        position: Character offset of the offending token, if known
    """

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NonIntegerExponent(ExprSyntaxError):
    """The right operand of '^' was not a nonnegative integer literal."""


class QInNumericMode(ExprSyntaxError):
    """'q' appeared in an expression while q is numeric and substitution is off."""
