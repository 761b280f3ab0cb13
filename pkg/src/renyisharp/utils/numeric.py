"""Numeric helpers shared by the extremal, coupler and bound modules."""

import math
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from renyisharp.core.errors import ConvergenceError

FLOOR_SNAP = 1e-12
MAX_BISECT_ITER = 200


def snap_floor(x: float, tol: float = FLOOR_SNAP) -> int:
    """Floor of ``x``, snapping to the nearest integer when within ``tol`` of it.

    Every floor formula in the package switches branch at integer arguments, so a
    value that is an integer up to rounding must land on that integer.
    """
    nearest = round(x)
    if abs(x - nearest) <= tol:
        return int(nearest)
    return math.floor(x)


def bisect_root(
    f: Callable[[float], float],
    left: float,
    right: float,
    xtol: float = 1e-14,
    ftol: float = 0.0,
    max_iter: int = MAX_BISECT_ITER,
) -> float:
    """
    Bisection on a bracketing interval.

    Args:
        f (Callable): Function to find the root of.
        left (float): Left boundary.
        right (float): Right boundary.
        xtol (float): Stop once the bracket is this narrow.
        ftol (float): Stop early once ``|f(mid)| <= ftol`` (0 disables).
        max_iter (int): Iteration cap.

    Returns:
        float: midpoint of the final bracket.

    Raises:
        ConvergenceError: if ``f(left)`` and ``f(right)`` share a strict sign.
    """
    fleft = f(left)
    fright = f(right)
    if fleft == 0.0:
        return left
    if fright == 0.0:
        return right
    if (fleft > 0.0) == (fright > 0.0):
        raise ConvergenceError(
            f"f(left)={fleft:.3e} and f(right)={fright:.3e} must have opposite signs "
            f"on [{left!r}, {right!r}]"
        )

    for _ in range(max_iter):
        if right - left <= xtol:
            break
        mid = 0.5 * (left + right)
        if mid <= left or mid >= right:
            break  # float resolution exhausted
        fmid = f(mid)
        if fmid == 0.0 or abs(fmid) <= ftol:
            return mid
        if (fleft > 0.0) == (fmid > 0.0):
            left, fleft = mid, fmid
        else:
            right = mid
    return 0.5 * (left + right)


def snap_floor_array(x: ArrayLike, tol: float = FLOOR_SNAP) -> np.ndarray:
    """Elementwise ``snap_floor``, returned as floats."""
    x = np.asarray(x, dtype=np.float64)
    nearest = np.rint(x)
    return np.where(np.abs(x - nearest) <= tol, nearest, np.floor(x))


def bisect_decreasing(
    f: Callable[[np.ndarray], np.ndarray],
    left: ArrayLike,
    right: ArrayLike,
    xtol: float = 1e-14,
    max_iter: int = MAX_BISECT_ITER,
) -> np.ndarray:
    """Elementwise root of a decreasing ``f`` on the brackets [left, right].

    Every entry is halved in lockstep until all brackets are narrower than ``xtol``.
    A target outside an entry's range converges to the nearer end.
    """
    left, right = np.broadcast_arrays(
        np.asarray(left, dtype=np.float64), np.asarray(right, dtype=np.float64)
    )
    left, right = left.copy(), right.copy()
    for _ in range(max_iter):
        if not np.any(right - left > xtol):
            break
        mid = 0.5 * (left + right)
        above = f(mid) > 0.0
        left = np.where(above, mid, left)
        right = np.where(above, right, mid)
    return 0.5 * (left + right)
