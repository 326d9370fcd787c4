"""Exception types shared across the package.

Argument misuse (bad indices, out-of-range parameters) raises plain
ValueError; these classes cover data- and configuration-level failures
that a CLI run maps to exit code 1.
"""


class CitegraphError(Exception):
    """Base class for data and configuration errors."""


class ParseError(CitegraphError):
    """A corpus file row could not be parsed."""

    def __init__(self, path, line_no, reason):
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{self.path}:{line_no}: {reason}")


class ConflictError(CitegraphError):
    """The same paper id appeared twice with conflicting metadata."""


class ConfigurationError(CitegraphError):
    """An analysis was requested with inconsistent or missing configuration."""


class EmptyDistributionError(CitegraphError):
    """An inequality measure was requested on an empty distribution."""
