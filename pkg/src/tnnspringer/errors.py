"""Exception types shared by the package.

The CLI maps these onto its exit codes (2, 3, 4); library code raises them
and never calls ``sys.exit``.
"""


class TNNError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ValidationError(TNNError, ValueError):
    """Bad input: unsupported group, malformed word, violated precondition."""

    exit_code = 2


class VerificationError(TNNError):
    """A computed object failed one of its defining checks."""

    exit_code = 3


class DomainError(ValidationError):
    """Input lies outside the domain of a numeric routine (e.g. complex spectrum)."""

    exit_code = 2


class ResourceLimitError(TNNError):
    """A brute-force scan would exceed the configured size budget."""

    exit_code = 4
