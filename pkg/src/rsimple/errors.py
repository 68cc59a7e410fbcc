"""Exception types shared by every module."""


class RSimpleError(Exception):
    """Base class for library errors."""


class BudgetExceeded(RSimpleError):
    """A search would exceed its configured state budget."""


class PreconditionViolated(RSimpleError):
    """An operation was called outside its contract."""


class InvalidKind(RSimpleError):
    """A coloring family kind cannot be built with the given sizes."""


class FieldTooSmall(RSimpleError):
    """The prime field used for representative families is too small."""


class ParseError(RSimpleError):
    """Malformed instance text."""


class ValidationError(RSimpleError):
    """Well-formed instance that breaks a domain invariant."""


class _TooLarge:
    """Sentinel returned when an explicit walk would exceed its cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TooLarge"

    def __bool__(self):
        return False


TooLarge = _TooLarge()
