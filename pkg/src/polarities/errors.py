"""Exception hierarchy shared by all modules."""


class PolarityError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(PolarityError, ValueError):
    """A subset or table does not fit the carrier it is used with."""


class RangeError(PolarityError, IndexError):
    """An element, coordinate or lattice index is out of range."""


class ArityError(PolarityError, ValueError):
    pass


class CapacityError(PolarityError):
    """The stable-set lattice would exceed the configured element cap."""


class ValidationError(PolarityError, ValueError):
    """User-supplied structure violates a required law."""


class PreconditionError(PolarityError, ValueError):
    pass


class ContractError(PolarityError):
    """An operation was called on an object lacking a required certificate."""


class InternalConsistencyError(PolarityError, AssertionError):
    """A check that must always hold has failed, which signals a bug."""


class ParseError(PolarityError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
