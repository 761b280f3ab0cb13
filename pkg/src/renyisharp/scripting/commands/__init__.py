"""Script commands; importing this package fills ``COMMANDS``."""

from .bound import BoundCommand
from .curve import CurveCommand
from .entropy import EntropyCommand
from .verify import VerifyCommand

__all__ = [
    "BoundCommand",
    "CurveCommand",
    "EntropyCommand",
    "VerifyCommand",
]
