"""Script queries and the table that maps a script's ``command`` key to them."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Dict

from renyisharp.core.registry import Registry


class QueryCommand(ABC):
    """One script entry. ``execute`` returns a JSON-ready result; ``to_dict`` the entry itself."""

    @abstractmethod
    def execute(self, context) -> dict:
        """Run against ``context``; out-of-domain queries raise RenyiSharpError."""

    @classmethod
    @abstractmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QueryCommand":
        ...

    @abstractmethod
    def to_dict(self) -> dict:
        ...

    def __str__(self) -> str:
        return f"{self.__class__.__name__}({self.to_dict()})"


COMMANDS: Registry[QueryCommand] = Registry(
    "command", QueryCommand, build=lambda cls, data: cls.from_dict(data)
)


def command_from_dict(data: Dict[str, Any]) -> QueryCommand:
    """Build the query a script entry names in its ``command`` key."""
    if not isinstance(data, dict) or "command" not in data:
        raise ValueError("entry missing 'command' key")
    return COMMANDS.create(str(data["command"]), data)
