"""
Exception hierarchy for discdeg.

Precondition failures are ``DomainError`` (a ``ValueError``); internal
consistency failures are ``InvariantViolation`` (a ``RuntimeError``) so that
callers can tell a bad request apart from a bug or a falsified formula.
"""


class DiscdegError(Exception):
    """Base class for every error raised by discdeg."""


class DomainError(DiscdegError, ValueError):
    """An argument is outside the domain of the operation."""


class CapacityError(DiscdegError, ValueError):
    """A desk-scale size cap was exceeded."""


class InvariantViolation(DiscdegError, RuntimeError):
    """A computed value broke an invariant that must always hold."""


class TheoremFalsified(InvariantViolation):
    """A degree was not divisible by the contact-map degree mu."""


class FaceDuplication(InvariantViolation):
    """Two support pairs (I, J) produced the same face."""
