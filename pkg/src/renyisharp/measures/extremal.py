"""The extremal families v_n(p) and w(p).

v_n(p) = (p, (1−p)/(n−1), ..., (1−p)/(n−1)) for p ∈ [1/n, 1] and
w(p) = (p, ..., p, 1 − ⌊1/p⌋p) with ⌊1/p⌋ copies of p, for p ∈ (0, 1].

Norms and entropies are closed form. The inverses of p ↦ H_a and p ↦ ‖·‖_r are
closed form at orders 1/2, 2 and ∞ and found by bisection otherwise; both maps
are strictly monotone in p, so brackets always exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from renyisharp.core.errors import DomainError
from renyisharp.measures.orders import Order, OrderLike, theta
from renyisharp.measures.simplex import ZERO_MASS, ProbVec, binary_entropy
from renyisharp.utils.numeric import bisect_root, snap_floor

EDGE_TOL = 1e-12
INVERSE_XTOL = 1e-14


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise DomainError(f"v_n needs an integer n >= 2, got {n!r}")
    return int(n)


def _check_p_v(n: int, p: float) -> float:
    lo = 1.0 / n
    if not (lo - EDGE_TOL <= p <= 1.0 + EDGE_TOL):
        raise DomainError(f"v_{n}(p) needs p in [1/{n}, 1], got {p!r}")
    return min(max(p, lo), 1.0)


def _check_p_w(p: float) -> float:
    if not (0.0 < p <= 1.0 + EDGE_TOL):
        raise DomainError(f"w(p) needs p in (0, 1], got {p!r}")
    return min(p, 1.0)


def _w_cells(p: float) -> Tuple[int, float]:
    """(⌊1/p⌋, remainder mass) with the integer snap at cell boundaries."""
    k = snap_floor(1.0 / p)
    rem = 1.0 - k * p
    if rem < ZERO_MASS:
        rem = 0.0
    return k, rem


# ---------------------------------------------------------------------------
# v_n(p)

def _log_norm_v(n: int, p: float, r: Order) -> float:
    if r.is_zero:
        raise DomainError("the l_r-norm diverges structurally at order 0")
    if r.is_shannon:
        return 0.0
    if r.is_infinity or p == 1.0:
        return math.log(p)
    # p is the largest mass, so factor it out: p (1 + (n−1)(q/p)^r)^{1/r}
    q = (1.0 - p) / (n - 1)
    return math.log(p) + math.log1p((n - 1) * (q / p) ** r.value) / r.value


def norm_v(n: int, p: float, r: OrderLike) -> float:
    """‖v_n(p)‖_r = (p^r + (n−1)^{1−r}(1−p)^r)^{1/r}."""
    n = _check_n(n)
    p = _check_p_v(n, p)
    r = Order.of(r)
    if r.is_shannon:
        return 1.0
    if r.is_infinity:
        return p
    return math.exp(_log_norm_v(n, p, r))


def renyi_v(n: int, p: float, a: OrderLike) -> float:
    n = _check_n(n)
    p = _check_p_v(n, p)
    a = Order.of(a)
    if a.is_zero:
        return math.log(n) if p < 1.0 else 0.0
    if a.is_shannon:
        return binary_entropy(p) + (1.0 - p) * math.log(n - 1)
    if a.is_infinity:
        return -math.log(p) + 0.0
    # + 0.0 turns the -0.0 at p = 1 into 0.0
    return _log_norm_v(n, p, a) / theta(a) + 0.0


# ---------------------------------------------------------------------------
# w(p)

def norm_w(p: float, r: OrderLike) -> float:
    """‖w(p)‖_r; equals m^{θ(r)} at p = 1/m."""
    p = _check_p_w(p)
    r = Order.of(r)
    if r.is_zero:
        raise DomainError("the l_r-norm diverges structurally at order 0")
    if r.is_shannon:
        return 1.0
    if r.is_infinity:
        return p
    k, rem = _w_cells(p)
    if rem == 0.0:
        return float(k) ** theta(r)
    return math.exp(_log_norm_w(p, k, rem, r))


def _log_norm_w(p: float, k: int, rem: float, r: Order) -> float:
    return math.log(p) + math.log(k + (rem / p) ** r.value) / r.value


def renyi_w(p: float, a: OrderLike) -> float:
    p = _check_p_w(p)
    a = Order.of(a)
    k, rem = _w_cells(p)
    if rem == 0.0:
        return math.log(k)
    if a.is_zero:
        return math.log(k + 1)
    if a.is_shannon:
        return -k * p * math.log(p) - rem * math.log(rem)
    if a.is_infinity:
        return -math.log(p)
    return _log_norm_w(p, k, rem, a) / theta(a)


# ---------------------------------------------------------------------------
# Domains of the inverse maps

def interval_v(n: int, r: OrderLike) -> Tuple[float, float]:
    """Range of p ↦ ‖v_n(p)‖_r as a closed interval (lo, hi)."""
    n = _check_n(n)
    u = float(n) ** theta(r)
    return (min(1.0, u), max(1.0, u))


def interval_w(r: OrderLike) -> Tuple[float, float]:
    """Range of p ↦ ‖w(p)‖_r: [1, ∞) for r < 1, (0, 1] for r > 1."""
    r = Order.of(r)
    if r.as_float() < 1.0:
        return (1.0, math.inf)
    return (0.0, 1.0)


def _check_mu(mu: float, hi: float) -> float:
    if not (-EDGE_TOL <= mu <= hi + EDGE_TOL):
        raise DomainError(f"entropy value {mu!r} outside [0, {hi!r}]")
    return min(max(mu, 0.0), hi)


def _invertible(a: Order) -> Order:
    if a.is_zero:
        raise DomainError("entropy of order 0 is not invertible in p")
    return a


def _decreasing_inverse(f, lo: float, hi: float) -> float:
    """Root of a decreasing residual on [lo, hi], clamped to the ends when rounding
    pushes the target just outside the range."""
    if f(lo) <= 0.0:
        return lo
    if f(hi) >= 0.0:
        return hi
    return bisect_root(f, lo, hi, xtol=INVERSE_XTOL)


# ---------------------------------------------------------------------------
# Inverses for v_n

def inv_entropy_v(n: int, a: OrderLike, mu: float, closed_form: bool = True) -> float:
    """p ∈ [1/n, 1] with H_a(v_n(p)) = mu."""
    n = _check_n(n)
    a = _invertible(Order.of(a))
    mu = _check_mu(mu, math.log(n))
    lo = 1.0 / n
    if mu == 0.0:
        return 1.0
    if closed_form:
        e = math.exp(mu)
        if a.is_infinity:
            return min(max(math.exp(-mu), lo), 1.0)
        if a.is_finite and a.value == 0.5:
            root = math.sqrt(max(e * (n - 1) * (n - e), 0.0))
            p = (n * (n - 1) - (n - 2) * e + 2.0 * root) / (n * n)
            return min(max(p, lo), 1.0)
        if a.is_finite and a.value == 2.0:
            p = (1.0 + math.sqrt(max(math.exp(-mu) * (n - 1) * (n - e), 0.0))) / n
            return min(max(p, lo), 1.0)
    return _decreasing_inverse(lambda p: renyi_v(n, p, a) - mu, lo, 1.0)


def inv_norm_v(n: int, r: OrderLike, t: float) -> float:
    """p ∈ [1/n, 1] with ‖v_n(p)‖_r = t, for t ∈ I_n(r)."""
    n = _check_n(n)
    r = Order.of(r)
    if r.is_zero or r.is_shannon:
        raise DomainError(f"norm of order {r} is not invertible")
    lo, hi = interval_v(n, r)
    if not (lo - EDGE_TOL <= t <= hi + EDGE_TOL) or t <= 0.0:
        raise DomainError(f"norm value {t!r} outside [{lo!r}, {hi!r}]")
    if r.is_infinity:
        return min(max(t, 1.0 / n), 1.0)
    t = min(max(t, lo), hi)
    return inv_entropy_v(n, r, math.log(t) / theta(r))


# ---------------------------------------------------------------------------
# Inverses for w

def inv_entropy_w(a: OrderLike, mu: float, closed_form: bool = True) -> float:
    """p ∈ (0, 1] with H_a(w(p)) = mu; the cell m = ⌊e^mu⌋ is located first."""
    a = _invertible(Order.of(a))
    if not (mu >= -EDGE_TOL) or math.isinf(mu):
        raise DomainError(f"entropy value {mu!r} must be finite and >= 0")
    mu = max(mu, 0.0)
    e = math.exp(mu)
    m = snap_floor(e)
    if abs(e - m) <= 1e-12:
        return 1.0 / m
    if closed_form:
        if a.is_infinity:
            return math.exp(-mu)
        if a.is_finite and a.value == 0.5:
            root = math.sqrt(max(e * m * (1 + m - e), 0.0))
            return ((m + 1) + (m - 1) * e + 2.0 * root) / (m * (1 + m) ** 2)
        if a.is_finite and a.value == 2.0:
            root = math.sqrt(max(math.exp(-mu) * m * (1 + m - e), 0.0))
            return (m + root) / (m * (1 + m))
    return _decreasing_inverse(lambda p: renyi_w(p, a) - mu, 1.0 / (m + 1), 1.0 / m)


def inv_norm_w(r: OrderLike, t: float) -> float:
    """p ∈ (0, 1] with ‖w(p)‖_r = t, for t ∈ J(r)."""
    r = Order.of(r)
    if r.is_zero or r.is_shannon:
        raise DomainError(f"norm of order {r} is not invertible")
    lo, hi = interval_w(r)
    if r.as_float() < 1.0:
        ok = t >= lo - EDGE_TOL and math.isfinite(t)
    else:
        ok = 0.0 < t <= hi + EDGE_TOL
    if not ok:
        raise DomainError(f"norm value {t!r} outside the range of w at order {r}")
    if r.is_infinity:
        return min(t, 1.0)
    t = max(t, 1.0) if r.as_float() < 1.0 else min(t, 1.0)
    return inv_entropy_w(r, math.log(t) / theta(r))


# ---------------------------------------------------------------------------
# Value types

@dataclass(frozen=True)
class ExtremalV:
    """v_n(p) as a value."""

    n: int
    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", _check_n(self.n))
        object.__setattr__(self, "p", _check_p_v(self.n, self.p))

    @classmethod
    def uniform(cls, n: int) -> "ExtremalV":
        return cls(n, 1.0 / n)

    def materialize(self) -> ProbVec:
        rest = (1.0 - self.p) / (self.n - 1)
        return ProbVec(np.array([self.p] + [rest] * (self.n - 1)))

    def norm(self, r: OrderLike) -> float:
        return norm_v(self.n, self.p, r)

    def renyi(self, a: OrderLike) -> float:
        return renyi_v(self.n, self.p, a)

    def describe(self) -> dict:
        return {"family": "v", "n": self.n, "p": self.p}


@dataclass(frozen=True)
class ExtremalW:
    """w(p) as a value."""

    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_p_w(self.p))

    def materialize(self) -> ProbVec:
        k, rem = _w_cells(self.p)
        masses = [self.p] * k
        if rem > 0.0:
            masses.append(rem)
        return ProbVec(np.array(masses))

    @property
    def support_size(self) -> int:
        k, rem = _w_cells(self.p)
        return k + (1 if rem > 0.0 else 0)

    def norm(self, r: OrderLike) -> float:
        return norm_w(self.p, r)

    def renyi(self, a: OrderLike) -> float:
        return renyi_w(self.p, a)

    def describe(self) -> dict:
        return {"family": "w", "p": self.p}
