"""Exception types shared across the package."""


class TblError(Exception):
    """Base class for all library errors."""


class BraidParseError(TblError, ValueError):
    """Braid text could not be turned into a word."""

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class ZeroGeneratorError(BraidParseError):
    pass


class GeneratorRangeError(BraidParseError):
    pass


class BadTokenError(BraidParseError):
    pass


class ResourceCapExceeded(TblError):
    """A computation would exceed the configured crossing cap."""


class DeterminantMismatch(TblError):
    """Linking matrix determinant disagrees with the diagram determinant."""


class UnsupportedInput(TblError, ValueError):
    """Input is outside the domain of an operation."""


class UndefinedInvariant(TblError):
    """The requested invariant is not defined for this input."""
