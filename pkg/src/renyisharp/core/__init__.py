from .context import AppContext
from .errors import ConvergenceError, DomainError, RenyiSharpError, ResourceError
from .registry import Registry

__all__ = [
    "AppContext",
    "ConvergenceError",
    "DomainError",
    "Registry",
    "RenyiSharpError",
    "ResourceError",
]
