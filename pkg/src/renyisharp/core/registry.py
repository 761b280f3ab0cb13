"""Name-keyed tables of classes, used for script commands and bound checks."""

from __future__ import annotations

from typing import Any, Callable, Dict, Generic, Iterator, List, Optional, Type, TypeVar

T = TypeVar("T")


class Registry(Generic[T]):
    """Classes deriving from ``base``, looked up by name and built through ``build``.

    Names keep registration order.
    """

    def __init__(self, kind: str, base: Type[T], build: Callable[..., T]) -> None:
        self.kind = kind
        self.base = base
        self._build = build
        self._entries: Dict[str, Type[T]] = {}

    def register(self, name: str, entry: Type[T]) -> Type[T]:
        if name in self._entries:
            raise ValueError(f"{self.kind} already registered: {name}")
        if not (isinstance(entry, type) and issubclass(entry, self.base)):
            raise ValueError(f"{self.kind} {name!r} must derive from {self.base.__name__}")
        self._entries[name] = entry
        return entry

    def entry(self, name: str) -> Callable[[Type[T]], Type[T]]:
        """Class decorator form of ``register``."""
        return lambda cls: self.register(name, cls)

    def unregister(self, name: str) -> None:
        self._entries.pop(name, None)

    def get(self, name: str) -> Optional[Type[T]]:
        return self._entries.get(name)

    def names(self) -> List[str]:
        return list(self._entries)

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(list(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def create(self, name: str, *args: Any) -> T:
        entry = self._entries.get(name)
        if entry is None:
            raise ValueError(
                f"Unknown {self.kind}: {name}\nAvailable {self.kind}s: {', '.join(self._entries)}"
            )
        return self._build(entry, *args)
