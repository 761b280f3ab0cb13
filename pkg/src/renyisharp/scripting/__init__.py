"""Scripting module - batch queries and their execution."""

from .command import COMMANDS, QueryCommand, command_from_dict
from .context import ExecutionContext
from .executor import ScriptExecutor

# Import commands to register them
from . import commands  # noqa: E402,F401

__all__ = [
    "COMMANDS",
    "ExecutionContext",
    "QueryCommand",
    "ScriptExecutor",
    "command_from_dict",
]
