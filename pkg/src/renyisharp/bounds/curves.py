"""Boundary curves of the feasible regions, as data.

Each region pairs an x-quantity with the lower and upper bound on a y-quantity.
Grids are uniform on a closed interval and have the regime boundaries of the
bound formulas (integer cells, the H_2/H_{1/2} threshold) spliced in, so every
kink of the boundary is an explicit point.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from renyisharp.bounds.theorems import (
    fano_renyi,
    feasible_bounds,
    h2_hhalf_threshold,
    h2_vs_hhalf,
    pe_bounds,
    z_from_pe,
)
from renyisharp.core.errors import DomainError
from renyisharp.measures.orders import HALF, SHANNON, TWO, Order, OrderLike
from renyisharp.utils.formatting import format_value

CURVE_TOL = 1e-12
CSV_HEADER = ("x", "y_lower", "y_upper")

Point = Tuple[float, float, float]


@dataclass(frozen=True)
class BoundCurve:
    x_label: str
    y_label: str
    points: Tuple[Point, ...]

    def violations(self, tol: float = CURVE_TOL) -> List[int]:
        """Indices where y_lower exceeds y_upper by more than ``tol``."""
        return [i for i, (_, lo, up) in enumerate(self.points) if lo > up + tol]

    def xs(self) -> List[float]:
        return [p[0] for p in self.points]

    def to_csv_rows(self) -> List[List[str]]:
        rows = [list(CSV_HEADER)]
        rows.extend([format_value(v) for v in p] for p in self.points)
        return rows

    def to_csv_text(self) -> str:
        out = io.StringIO()
        csv.writer(out, lineterminator="\n").writerows(self.to_csv_rows())
        return out.getvalue()

    def to_dict(self) -> dict:
        return {
            "x_label": self.x_label,
            "y_label": self.y_label,
            "points": [list(p) for p in self.points],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_csv(cls, text: str, x_label: str = "x", y_label: str = "y") -> "BoundCurve":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if not rows or tuple(c.strip() for c in rows[0]) != CSV_HEADER:
            raise DomainError(f"curve CSV must start with the header {','.join(CSV_HEADER)}")
        points = []
        for row in rows[1:]:
            if len(row) != 3:
                raise DomainError(f"curve row needs three values, got {row!r}")
            points.append(tuple(float(c) for c in row))
        return cls(x_label, y_label, tuple(points))  # type: ignore[arg-type]


@dataclass(frozen=True)
class _Region:
    x_label: str
    y_label: str
    x_range: Tuple[float, float]
    breaks: Tuple[float, ...]
    evaluate: Callable[[float], Tuple[float, float]]


def _cell_breaks_eps(n: int) -> Tuple[float, ...]:
    # P_e = 1 − 1/m
    return tuple(1.0 - 1.0 / m for m in range(2, n))


def _cell_breaks_log(n: int) -> Tuple[float, ...]:
    return tuple(math.log(m) for m in range(2, n))


def _make_region(
    key: str,
    n: int,
    a: Optional[Order],
    b: Optional[Order],
    kind: str,
) -> _Region:
    top_eps = (n - 1) / n
    top_h = math.log(n)

    if key == "h_vs_pe":
        a = a or SHANNON

        def fano(x: float) -> Tuple[float, float]:
            lo, up = fano_renyi(kind, a, x, n)
            return lo, up  # type: ignore[return-value]

        return _Region("P_e", f"H_{a}", (0.0, top_eps), _cell_breaks_eps(n), fano)

    if key == "pe_vs_h":
        a = a or SHANNON

        def pe(x: float) -> Tuple[float, float]:
            up, lo = pe_bounds(a, x, n)
            return lo, up  # type: ignore[return-value]

        return _Region(f"H_{a}", "P_e", (0.0, top_h), _cell_breaks_log(n), pe)

    if key == "z_vs_pe":
        return _Region("P_e", "Z", (0.0, top_eps), _cell_breaks_eps(n), lambda x: z_from_pe(x, n))

    if key == "h2_vs_hhalf":
        breaks = _cell_breaks_log(n) + (h2_hhalf_threshold(n),)

        def h2(x: float) -> Tuple[float, float]:
            lo, up = h2_vs_hhalf(x, n)
            return lo, up  # type: ignore[return-value]

        return _Region(f"H_{HALF}", f"H_{TWO}", (0.0, top_h), breaks, h2)

    if key == "hb_vs_ha":
        if a is None or b is None:
            raise DomainError("region Hb_vs_Ha needs both orders a and b")

        def feasible(x: float) -> Tuple[float, float]:
            lo, up = feasible_bounds(n, a, b, x)
            return lo.value, up.value

        return _Region(f"H_{a}", f"H_{b}", (0.0, top_h), _cell_breaks_log(n), feasible)

    raise DomainError(
        f"unknown region {key!r}; expected one of H_vs_Pe, Pe_vs_H, Z_vs_Pe, H2_vs_Hhalf, Hb_vs_Ha"
    )


def region_key(region: str) -> str:
    return region.strip().lower().replace("-", "_")


REGIONS = ("H_vs_Pe", "Pe_vs_H", "Z_vs_Pe", "H2_vs_Hhalf", "Hb_vs_Ha")


def curve_grid(x_range: Tuple[float, float], points: int, breaks: Iterable[float]) -> List[float]:
    """Uniform grid on the closed interval with interior ``breaks`` merged in."""
    if points < 2:
        raise DomainError(f"a curve needs at least 2 grid points, got {points}")
    lo, hi = x_range
    grid = np.linspace(lo, hi, points).tolist()
    grid.extend(x for x in breaks if lo < x < hi)
    grid.sort()
    merged: List[float] = []
    for x in grid:
        if merged and abs(x - merged[-1]) <= CURVE_TOL:
            continue
        merged.append(x)
    merged[-1] = hi
    return merged


def sample_curve(
    region: str,
    n: int,
    points: int = 101,
    xs: Optional[Sequence[float]] = None,
    a: Optional[OrderLike] = None,
    b: Optional[OrderLike] = None,
    kind: str = "conditional",
    threads: int = 1,
) -> BoundCurve:
    """Sample the boundary of one feasible region for an alphabet of size n.

    Args:
        region: One of ``REGIONS`` (case and dash/underscore insensitive).
        n: X alphabet size, at least 2.
        points: Size of the uniform grid; regime boundaries are added on top.
        xs: Explicit x values; replaces the grid entirely when given.
        a, b: Orders for the regions that take them (``a`` for H_vs_Pe and
            Pe_vs_H, both for Hb_vs_Ha).
        kind: ``conditional`` or ``unconditional`` for H_vs_Pe.
        threads: Worker threads for the per-point fan-out.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"curves need an alphabet size n >= 2, got {n!r}")
    n = int(n)
    curve_def = _make_region(
        region_key(region),
        n,
        Order.of(a) if a is not None else None,
        Order.of(b) if b is not None else None,
        kind,
    )
    grid = list(xs) if xs is not None else curve_grid(curve_def.x_range, points, curve_def.breaks)
    if not grid:
        raise DomainError("empty x grid")

    if threads and threads > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(curve_def.evaluate, grid))
    else:
        values = [curve_def.evaluate(x) for x in grid]

    pts = tuple((float(x), float(lo), float(up)) for x, (lo, up) in zip(grid, values))
    return BoundCurve(curve_def.x_label, curve_def.y_label, pts)


def describe_regions() -> Dict[str, str]:
    return {
        "H_vs_Pe": "H_a(X|Y) against P_e(X|Y) (Fano-type)",
        "Pe_vs_H": "P_e(X|Y) against H_a(X|Y)",
        "Z_vs_Pe": "Bhattacharyya parameter against P_e(X|Y)",
        "H2_vs_Hhalf": "H_2(X|Y) against H_{1/2}(X|Y)",
        "Hb_vs_Ha": "H_b(X|Y) against H_a(X|Y)",
    }
