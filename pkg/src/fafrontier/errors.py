"""Exception types shared across the package."""


class FrontierError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FrontierError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class ConditioningError(DomainError):
    """Conditioning on an event of probability zero."""


class NormalizationError(DomainError):
    """Probability masses do not form a distribution."""


class ContainmentError(DomainError):
    """A point is not inside the region it was required to lie in."""


class SizeError(DomainError):
    """An enumeration bound was exceeded."""


class InfeasibilityError(FrontierError):
    """No object satisfies the requested constraints."""

    def __init__(self, message: str, constraint: str):
        super().__init__(message)
        self.constraint = constraint


class UnsupportedModeError(FrontierError):
    """The inputs fall outside the regime an operation supports."""


class PreconditionError(FrontierError):
    """A hypothesis of a predicate does not hold for the given inputs."""


class DegenerateReportError(FrontierError):
    """A comparison cannot be made because one side is empty."""


class ConsistencyError(FrontierError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class ParseError(FrontierError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
