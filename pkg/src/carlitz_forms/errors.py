"""Exception hierarchy shared by every module of the package."""


class CarlitzError(Exception):
    """Base class for all errors raised by carlitz_forms."""


class DomainError(CarlitzError, ValueError):
    """An argument lies outside the domain of the operation."""


class RingMismatchError(CarlitzError, TypeError):
    """Two series (or scalars) live over different coefficient rings."""


class PrecisionError(CarlitzError):
    """The available precision is too small for the requested output."""


class LimitExceededError(CarlitzError):
    """A configured desk-scale limit would be exceeded."""


class InternalError(CarlitzError, AssertionError):
    """A mathematical invariant that must always hold was violated.

    Seeing this means a bug in the package, never bad user input.
    """
