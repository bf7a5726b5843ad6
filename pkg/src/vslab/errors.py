"""Exception hierarchy shared by the library and the CLI."""


class VslabError(Exception):
    """Base class for all library errors."""


class ValidationError(VslabError, ValueError):
    """Inconsistent or out-of-domain parameters."""


class DomainError(ValidationError):
    """An operation was applied outside its mathematical domain (e.g. log of 0)."""


class IndexUndefinedError(ValidationError):
    """The index of a constant polynomial is undefined."""


class BudgetError(VslabError):
    """An enumeration or table would exceed its configured size cap."""


class InvariantViolation(VslabError):
    """A checked mathematical invariant failed; indicates a bug."""
