"""Exception types shared across the package."""


class DimerError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(DimerError, ValueError):
    """A coupling, field, axis or option is not acceptable (e.g. non-finite)."""


class DomainError(DimerError, ValueError):
    """An argument lies outside the mathematical domain, e.g. ``T <= 0``."""


class InvalidStateError(DimerError, ValueError):
    """A matrix is not a valid two-qubit density matrix."""


class NumericError(DimerError, ArithmeticError):
    """A numerical routine failed (overflow, eigensolver breakdown)."""
