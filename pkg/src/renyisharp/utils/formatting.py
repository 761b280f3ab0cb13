"""Text formatting and parsing for CLI, CSV and script inputs."""

from __future__ import annotations

import math
import re
from typing import List, Sequence

import numpy as np

from renyisharp.core.errors import DomainError

SIGNIFICANT_DIGITS = 12


def format_value(x: float) -> str:
    """Fixed 12 significant digits, positional, locale independent.

    >>> format_value(0.6931471805599453)
    '0.693147180560'
    """
    if x is None:
        return ""
    x = float(x) + 0.0  # no "-0"
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return np.format_float_positional(
        x, precision=SIGNIFICANT_DIGITS, unique=False, fractional=False, trim="k"
    )


_LABEL = re.compile(r"[A-Za-z_][\w ()|.\-]*")


def is_header_row(cells: Sequence[str]) -> bool:
    """True when every cell is a column label rather than a number."""
    if not cells:
        return False
    for cell in cells:
        try:
            float(cell)
            return False
        except ValueError:
            if not _LABEL.fullmatch(cell):
                return False
    return True


def parse_masses(text: str) -> List[float]:
    """Parse a comma-separated mass list such as ``0.5,0.25,0.25``."""
    parts = [p.strip() for p in text.replace(";", ",").split(",")]
    parts = [p for p in parts if p]
    if not parts:
        raise DomainError("empty mass list")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise DomainError(f"cannot parse masses from {text!r}: {e}") from e


def parse_seed(text: str | int) -> int:
    """Seeds are accepted as decimal or 0x-prefixed hex."""
    if isinstance(text, int):
        return text
    try:
        return int(str(text).strip(), 0)
    except ValueError as e:
        raise DomainError(f"cannot parse seed from {text!r}") from e
