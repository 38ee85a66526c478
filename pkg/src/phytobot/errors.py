"""Exception hierarchy shared by all phytobot modules."""


class PhytobotError(ValueError):
    """Base class for all phytobot errors."""


class ParameterError(PhytobotError):
    """A model parameter violates its invariants (non-finite, out of range)."""


class DomainError(PhytobotError):
    """An argument lies outside the mathematical domain of the operation."""


class InputError(PhytobotError):
    """User-supplied data (file, series, schedule) is malformed or unusable."""
