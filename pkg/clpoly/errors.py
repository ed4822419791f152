# clpoly/errors.py
"""
Exception hierarchy.

Every class also derives from a builtin so callers can catch ``ValueError``
(bad input or a mathematical domain violation) or ``RuntimeError`` (a
computed result contradicted a proven property) without importing clpoly.

The CLI maps the three families to exit codes:
  ParseError -> 2, DomainError -> 3, InvariantViolation -> 4.
"""

from typing import Optional


class ClPolyError(Exception):
    """Base class for all clpoly errors."""


class ParseError(ClPolyError, ValueError):
    """Raised when user input cannot be parsed; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(ClPolyError, ValueError):
    """Input parsed fine but lies outside the domain of the operation."""


class RejectC(DomainError):
    pass


class RejectScale(DomainError):
    pass


class NotCLError(DomainError):
    """A CL-polynomial was required but detection returned a NotCL verdict."""

    def __init__(self, message: str, reason: Optional[str] = None):
        self.reason = reason
        super().__init__(message)


class NoRealRootError(DomainError):
    pass


class NoPositiveRootError(DomainError):
    pass


class NotExpressibleError(DomainError):
    pass


class NotCLClassError(DomainError):
    pass


class DegreeMismatchError(DomainError):
    pass


class NotOnCircleError(DomainError):
    pass


class OutOfRangeError(DomainError):
    pass


class MissingReferenceError(DomainError):
    pass


class InvariantViolation(ClPolyError, RuntimeError):
    """A computation contradicted a property that is supposed to always hold."""


class SingularSubsystemError(InvariantViolation):
    pass


class SeparationError(InvariantViolation):
    pass


class ReferenceDataError(InvariantViolation):
    pass
