"""Shape properties sampled on grids: sign changes, curvature, closed-form agreement."""

from __future__ import annotations

from typing import Callable, Iterable, List, Sequence

import numpy as np

from renyisharp.measures.extremal import inv_entropy_v, inv_entropy_w
from renyisharp.measures.orders import OrderLike


def sign_changes(values: Sequence[float], tol: float = 0.0) -> List[int]:
    """Indices i where values[i] has the opposite sign of the last value beyond ``tol``."""
    out: List[int] = []
    last = 0
    for i, v in enumerate(values):
        if abs(v) <= tol:
            continue
        sign = 1 if v > 0 else -1
        if last and sign != last:
            out.append(i)
        last = sign
    return out


def second_differences(fn: Callable[[float], float], xs: Sequence[float]) -> np.ndarray:
    """Divided second differences of ``fn`` on a (possibly uneven) increasing grid.

    Positive entries mean locally convex, negative locally concave.
    """
    x = np.asarray(xs, dtype=np.float64)
    if x.size < 3:
        raise ValueError("need at least three grid points")
    y = np.array([fn(float(t)) for t in x])
    h0 = x[1:-1] - x[:-2]
    h1 = x[2:] - x[1:-1]
    return 2.0 * ((y[2:] - y[1:-1]) / h1 - (y[1:-1] - y[:-2]) / h0) / (h0 + h1)


def closed_form_discrepancy_v(n: int, a: OrderLike, mus: Iterable[float]) -> float:
    """Largest |closed form − bisection| of the v_n inverse over ``mus``."""
    return max(
        abs(inv_entropy_v(n, a, mu) - inv_entropy_v(n, a, mu, closed_form=False)) for mu in mus
    )


def closed_form_discrepancy_w(a: OrderLike, mus: Iterable[float]) -> float:
    return max(abs(inv_entropy_w(a, mu) - inv_entropy_w(a, mu, closed_form=False)) for mu in mus)


def interior_grid(hi: float, points: int) -> List[float]:
    """``points`` values strictly inside (0, hi)."""
    return [hi * (i + 0.5) / points for i in range(points)]


def log_grid(lo: float, hi: float, points: int) -> List[float]:
    return np.geomspace(lo, hi, points).tolist()


def max_abs(values: Iterable[float]) -> float:
    return max((abs(v) for v in values), default=0.0)


def is_nondecreasing(values: Sequence[float], tol: float = 0.0) -> bool:
    return all(b >= a - tol for a, b in zip(values, values[1:]))


__all__ = [
    "closed_form_discrepancy_v",
    "closed_form_discrepancy_w",
    "interior_grid",
    "is_nondecreasing",
    "log_grid",
    "max_abs",
    "second_differences",
    "sign_changes",
]
