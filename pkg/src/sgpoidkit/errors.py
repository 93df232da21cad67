"""Shared exception types."""


class SgpoidkitError(Exception):
    """Base class for errors raised by this package."""


class DomainError(SgpoidkitError, ValueError):
    """A value is outside its declared range: bad arrow index, mismatched
    dimensions, malformed input data."""


class ConfigurationError(SgpoidkitError):
    """A search problem is malformed, e.g. a constraint watches an unknown
    variable."""


class ResourceLimitError(SgpoidkitError):
    """A computation was refused because it exceeds a built-in cost guard."""


class StaleDatabaseError(SgpoidkitError):
    """A class database does not cover the requested range."""
