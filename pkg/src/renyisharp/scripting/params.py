"""Coercion of script/CLI parameters, which may arrive as text or as JSON values."""

from typing import Any, List, Optional

from renyisharp.core.errors import DomainError
from renyisharp.measures.orders import Order
from renyisharp.utils.formatting import parse_masses, parse_seed


def opt_float(data: dict, key: str) -> Optional[float]:
    value = data.get(key)
    if value is None or value == "":
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise DomainError(f"'{key}' must be a number, got: {value!r}")


def opt_int(data: dict, key: str) -> Optional[int]:
    value = data.get(key)
    if value is None or value == "":
        return None
    try:
        return int(value)
    except (TypeError, ValueError):
        raise DomainError(f"'{key}' must be an integer, got: {value!r}")


def opt_order(data: dict, key: str) -> Optional[str]:
    """Validated order text (kept as text so to_dict round-trips)."""
    value = data.get(key)
    if value is None or value == "":
        return None
    Order.of(str(value))
    return str(value)


def opt_masses(data: dict, key: str) -> Optional[List[float]]:
    value = data.get(key)
    if value is None or value == "":
        return None
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    return parse_masses(str(value))


def opt_seed(data: dict, key: str) -> Optional[int]:
    value = data.get(key)
    if value is None or value == "":
        return None
    return parse_seed(value)


def require(value: Any, key: str, command: str) -> Any:
    if value is None:
        raise DomainError(f"'{key}' parameter is required for {command}")
    return value
