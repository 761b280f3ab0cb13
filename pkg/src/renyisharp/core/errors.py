"""Exception types raised by renyisharp."""


class RenyiSharpError(Exception):
    """Base class for every error raised by the library."""


class DomainError(RenyiSharpError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(RenyiSharpError, RuntimeError):
    """A bracket could not be found or a root search did not converge."""


class ResourceError(RenyiSharpError, RuntimeError):
    """An enumeration would exceed the configured cap."""
