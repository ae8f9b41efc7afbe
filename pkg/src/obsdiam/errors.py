"""Error hierarchy shared by the whole package.

Every error raised on purpose derives from ObsdiamError so callers (and the
CLI exit-code mapping) can distinguish our failures from genuine bugs.
"""


class ObsdiamError(Exception):
    """Base class for all package errors."""


class DomainError(ObsdiamError):
    """An argument is outside the mathematical domain of the operation."""


class ValidationError(ObsdiamError):
    """Structured data violates an invariant (bad masses, broken metric, ...)."""


class ContractError(ObsdiamError):
    """A documented precondition of an operation does not hold."""


class ResourceCapError(ObsdiamError):
    """An enumeration cap would be exceeded; raise the cap explicitly to proceed."""
