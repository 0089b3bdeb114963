"""Exception types shared across the package."""


class EvoplanError(Exception):
    """Base class for all package-specific errors."""


class DomainError(EvoplanError):
    """A domain definition is inconsistent (bad arity, unknown auxiliary, ...)."""


class InstanceError(EvoplanError):
    """A problem instance is malformed or references undeclared entities."""
