"""Root machinery and the coupled pairs that attain the conditional bounds.

``zeta_root`` and ``tangency_roots`` solve the two scalar equations that govern the
shape of t ↦ ‖v_n(N_r^{-1}(v_n : t))‖_s: the inflection abscissa (through the sign
function g) and the point where a secant from the uniform corner touches the curve.
``build_st`` and ``build_uv`` turn a fixed N_a(X|Y) into the two-component mixture
sources (S, T) and (U, V) whose H_b(·|·) is the sharp bound.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from renyisharp.core.errors import ConvergenceError, DomainError
from renyisharp.measures.conditional import CondSource, expected_norm
from renyisharp.measures.extremal import (
    EDGE_TOL,
    ExtremalV,
    ExtremalW,
    interval_v,
    interval_w,
    inv_norm_v,
    norm_v,
)
from renyisharp.measures.orders import Order, OrderLike, q_log, theta
from renyisharp.measures.simplex import ProbVec
from renyisharp.utils.numeric import bisect_root, snap_floor

ZETA_START = 1.0 + 1e-6
ZETA_LIMIT = 1e12
SLOPE_MARGIN = 1e-4
EDGE_MARGIN = 1e-9
SCAN_POINTS = 2000


# ---------------------------------------------------------------------------
# The sign function g and its root ζ

def _order_value(r: OrderLike) -> float:
    r = Order.of(r)
    if not (r.is_finite or r.is_shannon):
        raise DomainError(f"g is defined for finite positive orders, got {r}")
    return r.as_float()


def g_fn(n: int, z: float, r: OrderLike, s: OrderLike) -> float:
    """g(n, z; r, s) = (z^r + n − 1) ln_r z − (z^s + n − 1) ln_s z."""
    if z <= 0.0:
        raise DomainError(f"g needs z > 0, got {z!r}")
    rv, sv = _order_value(r), _order_value(s)
    return (z ** rv + (n - 1)) * q_log(rv, z) - (z ** sv + (n - 1)) * q_log(sv, z)


def _g_scaled(n: int, z: float, lo: float, hi: float) -> float:
    """g(n, z; lo, hi) / z^hi, finite for every z up to ZETA_LIMIT."""
    inv = z ** -hi
    return (z ** (lo - hi) + (n - 1) * inv) * q_log(lo, z) - (1.0 + (n - 1) * inv) * q_log(hi, z)


def zeta_root(n: int, r: OrderLike, s: OrderLike) -> float:
    """The unique z > 1 where g(n, ·; r, s) changes sign (n >= 3)."""
    rv, sv = _order_value(r), _order_value(s)
    if rv == sv:
        raise DomainError("zeta_root needs distinct orders")
    lo_order, hi_order = min(rv, sv), max(rv, sv)
    if lo_order < 0.5:
        raise DomainError(f"zeta_root needs orders >= 1/2, got {rv!r}, {sv!r}")
    key = ("zeta", int(n), lo_order, hi_order)
    return _memo(key, lambda: _solve_zeta(int(n), lo_order, hi_order))  # type: ignore[return-value]


def _solve_zeta(n: int, lo_order: float, hi_order: float) -> float:
    if n < 3:
        raise ConvergenceError(f"g({n}, z; r, s) keeps one sign on z > 1; no root to find")

    def f(z: float) -> float:
        return _g_scaled(n, z, lo_order, hi_order)

    left = ZETA_START
    if f(left) <= 0.0:
        raise ConvergenceError(f"g({n}, z; {lo_order}, {hi_order}) is not positive just above z = 1")
    right = 2.0 * left
    while f(right) >= 0.0:
        left, right = right, 2.0 * right
        if right > ZETA_LIMIT:
            raise ConvergenceError(f"no sign change of g below z = {ZETA_LIMIT:g}")
    return bisect_root(f, left, right, xtol=0.0)


# ---------------------------------------------------------------------------
# The tangency equation

def _check_st_order(r: OrderLike) -> Order:
    r = Order.of(r)
    if not r.is_finite or r.value < 0.5:
        raise DomainError(f"order must lie in [1/2, 1) or (1, inf), got {r}")
    return r


def _norm_v_slope(n: int, p: float, r: float, norm: float) -> float:
    """d/dp ‖v_n(p)‖_r written through z = (n−1)p/(1−p)."""
    z = (n - 1) * p / (1.0 - p)
    bracket = -(p ** (r - 1.0)) * math.expm1((1.0 - r) * math.log(z))
    return norm ** (1.0 - r) * bracket


def slope_residual(n: int, p: float, r: OrderLike, s: OrderLike) -> float:
    """Secant slope from the uniform corner minus the curve slope, at v_n(p).

    Zero exactly at the tangency point p*. Degenerates as p → 1/n, so only
    evaluate it at least ~1e-4 away from the uniform end.
    """
    rv, sv = _check_st_order(r).value, _check_st_order(s).value
    if not (1.0 / n < p < 1.0):
        raise DomainError(f"slope residual needs p in (1/{n}, 1), got {p!r}")
    nr, ns = norm_v(n, p, rv), norm_v(n, p, sv)
    ur, us = float(n) ** theta(rv), float(n) ** theta(sv)
    secant = (ns - us) / (nr - ur)
    tangent = _norm_v_slope(n, p, sv, ns) / _norm_v_slope(n, p, rv, nr)
    return secant - tangent


def p_star_closed_form(n: int, t: float) -> float:
    """Tangency point when one of the two orders is 1/2 and the other is t."""
    return 1.0 / (1.0 + (n - 1) ** ((t - 2.0) / t))


def _solve_p_star(n: int, r: float, s: float) -> Tuple[float, float]:
    lo = 1.0 / n
    us = np.geomspace(SLOPE_MARGIN, 1.0 - EDGE_MARGIN, SCAN_POINTS)
    ps = lo + (1.0 - lo) * us
    prev_p, prev_v = None, None
    for p in ps:
        p = float(p)
        if p >= 1.0:
            break
        v = slope_residual(n, p, r, s)
        if v == 0.0:
            return p, 0.0
        if prev_v is not None and (v > 0.0) != (prev_v > 0.0):
            root = bisect_root(
                lambda x: slope_residual(n, x, r, s), prev_p, p, xtol=1e-15
            )
            return root, slope_residual(n, root, r, s)
        prev_p, prev_v = p, v
    raise ConvergenceError(f"tangency equation has no sign change for n={n}, r={r}, s={s}")


@dataclass(frozen=True)
class RootBundle:
    """Solved constants for one (n, r, s)."""

    n: int
    r: Order
    s: Order
    tau: float
    zeta: float
    p_tau: float
    t_star: float
    p_star: float
    closed_form: bool
    residuals: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": str(self.r),
            "s": str(self.s),
            "tau": self.tau,
            "zeta": self.zeta,
            "p_tau": self.p_tau,
            "t_star": self.t_star,
            "p_star": self.p_star,
            "closed_form": self.closed_form,
            "residuals": dict(self.residuals),
        }


_ROOT_CACHE: Dict[tuple, object] = {}
_ROOT_LOCK = threading.Lock()


def _memo(key: tuple, solve: Callable[[], object]) -> object:
    """Cached value for ``key``; the solve runs unlocked and the first stored result wins."""
    with _ROOT_LOCK:
        cached = _ROOT_CACHE.get(key)
    if cached is not None:
        return cached
    value = solve()
    with _ROOT_LOCK:
        return _ROOT_CACHE.setdefault(key, value)


def clear_root_cache() -> None:
    with _ROOT_LOCK:
        _ROOT_CACHE.clear()


def tangency_roots(n: int, r: OrderLike, s: OrderLike, closed_form: bool = True) -> RootBundle:
    r, s = _check_st_order(r), _check_st_order(s)
    if r == s:
        raise DomainError("tangency_roots needs distinct orders")
    if int(n) != n or n < 3:
        raise DomainError(f"tangency_roots needs n >= 3, got {n!r}")
    n = int(n)
    key = ("tangency", n, r.value, s.value, closed_form)
    return _memo(key, lambda: _solve_tangency(n, r, s, closed_form))  # type: ignore[return-value]


def _solve_tangency(n: int, r: Order, s: Order, closed_form: bool) -> RootBundle:
    zeta = zeta_root(n, r, s)
    p_tau = zeta / (n - 1 + zeta)
    tau = norm_v(n, p_tau, r)

    use_closed = closed_form and 0.5 in (r.value, s.value)
    if use_closed:
        other = s.value if r.value == 0.5 else r.value
        p_star = p_star_closed_form(n, other)
        slope = slope_residual(n, p_star, r, s) if p_star < 1.0 - EDGE_MARGIN else 0.0
    else:
        p_star, slope = _solve_p_star(n, r.value, s.value)

    return RootBundle(
        n=n,
        r=r,
        s=s,
        tau=tau,
        zeta=zeta,
        p_tau=p_tau,
        t_star=norm_v(n, p_star, r),
        p_star=p_star,
        closed_form=use_closed,
        residuals={"slope": slope, "g": g_fn(n, zeta, min(r, s), max(r, s))},
    )


# ---------------------------------------------------------------------------
# Coupled pairs

Component = Union[ExtremalV, ExtremalW]


class _Mixture:
    """Shared behaviour of the two-component pairs."""

    weights: Tuple[float, float]
    components: Tuple[Component, Component]

    def mixture(self) -> List[Tuple[float, Component]]:
        return [(w, c) for w, c in zip(self.weights, self.components) if w > 0.0]

    def expected_norm(self, r: OrderLike) -> float:
        return math.fsum(w * c.norm(r) for w, c in self.mixture())

    def to_source(self, width: int | None = None) -> CondSource:
        """The pair as a finite source; components are zero-padded to ``width``
        (default: the longest component)."""
        parts = self.mixture()
        channels = [c.materialize().masses for _, c in parts]
        longest = max(len(ch) for ch in channels)
        if width is None:
            width = longest
        elif width < longest:
            raise DomainError(f"cannot fit a component of size {longest} into width {width}")
        padded = [np.pad(ch, (0, width - len(ch))) for ch in channels]
        return CondSource(ProbVec([w for w, _ in parts]), tuple(ProbVec(ch) for ch in padded))


@dataclass(frozen=True)
class ExtremalPairST(_Mixture):
    """(S, T): T picks the uniform v_n(1/n) or v_n(p_a)/v_n(p_b)."""

    n: int
    a: Order
    b: Order
    weights: Tuple[float, float]
    components: Tuple[ExtremalV, ExtremalV]
    regime: str
    delta: float
    roots: RootBundle

    def describe(self) -> dict:
        return {
            "pair": "ST",
            "n": self.n,
            "regime": self.regime,
            "delta": self.delta,
            "weights": list(self.weights),
            "components": [c.describe() for c in self.components],
            "p_star": self.roots.p_star,
            "t_star": self.roots.t_star,
        }


@dataclass(frozen=True)
class ExtremalPairUV(_Mixture):
    """(U, V): V picks w(1/m) with weight λ or w(1/(m+1)) with weight 1 − λ."""

    a: Order
    m: int
    lam: float

    @property
    def weights(self) -> Tuple[float, float]:  # type: ignore[override]
        return (self.lam, 1.0 - self.lam)

    @property
    def components(self) -> Tuple[ExtremalW, ExtremalW]:  # type: ignore[override]
        return (ExtremalW(1.0 / self.m), ExtremalW(1.0 / (self.m + 1)))

    def describe(self) -> dict:
        return {"pair": "UV", "m": self.m, "lambda": self.lam}


def build_st_from_norm(n: int, a: OrderLike, b: OrderLike, norm_a: float) -> ExtremalPairST:
    a, b = _check_st_order(a), _check_st_order(b)
    if a == b:
        raise DomainError("the (S, T) construction needs distinct orders")
    if int(n) != n or n < 3:
        raise DomainError(f"the (S, T) construction needs n >= 3, got {n!r}")
    n = int(n)
    lo, hi = interval_v(n, a)
    if not (lo - EDGE_TOL <= norm_a <= hi + EDGE_TOL):
        raise DomainError(f"N_{a} = {norm_a!r} outside [{lo!r}, {hi!r}] for n = {n}")
    N = min(max(norm_a, lo), hi)

    roots = tangency_roots(n, a, b)
    uniform = float(n) ** theta(a)
    t_star = roots.t_star
    # t = t* belongs to the single-component regime
    near_uniform = N > t_star if a.value < 1.0 else N < t_star

    if near_uniform:
        delta = (N - uniform) / (t_star - uniform)
        delta = min(max(delta, 0.0), 1.0)
        return ExtremalPairST(
            n=n,
            a=a,
            b=b,
            weights=(1.0 - delta, delta),
            components=(ExtremalV.uniform(n), ExtremalV(n, roots.p_star)),
            regime="a",
            delta=delta,
            roots=roots,
        )
    p_b = inv_norm_v(n, a, N)
    return ExtremalPairST(
        n=n,
        a=a,
        b=b,
        weights=(0.0, 1.0),
        components=(ExtremalV.uniform(n), ExtremalV(n, p_b)),
        regime="b",
        delta=1.0,
        roots=roots,
    )


def build_st(src: CondSource, a: OrderLike, b: OrderLike) -> ExtremalPairST:
    """(S, T) with H_a(S|T) = H_a(X|Y) and n = |supp(P_X)|."""
    n = src.support_x()
    if n < 3:
        raise DomainError(f"the (S, T) construction needs |supp(P_X)| >= 3, got {n}")
    return build_st_from_norm(n, a, b, expected_norm(src, a))


def _check_uv_order(a: OrderLike) -> Order:
    a = Order.of(a)
    if a.is_zero or a.is_shannon:
        raise DomainError(f"the (U, V) construction needs a in (0, 1) or (1, inf], got {a}")
    return a


def build_uv_from_norm(a: OrderLike, norm_a: float) -> ExtremalPairUV:
    a = _check_uv_order(a)
    lo, hi = interval_w(a)
    if not (lo - EDGE_TOL <= norm_a <= hi + EDGE_TOL) or norm_a <= 0.0 or math.isinf(norm_a):
        raise DomainError(f"N_{a} = {norm_a!r} is not attainable")
    th = theta(a)
    N = min(max(norm_a, 1.0), hi) if a.as_float() < 1.0 else min(norm_a, 1.0)
    m = max(snap_floor(N ** (1.0 / th)), 1)
    top, bottom = float(m + 1) ** th, float(m) ** th
    lam = (top - N) / (top - bottom)
    return ExtremalPairUV(a=a, m=m, lam=min(max(lam, 0.0), 1.0))


def build_uv(src: CondSource, a: OrderLike) -> ExtremalPairUV:
    """(U, V) with N_a(U|V) = N_a(X|Y)."""
    return build_uv_from_norm(a, expected_norm(src, a))


def pair_cond_renyi(pair: Union[ExtremalPairST, ExtremalPairUV], b: OrderLike) -> float:
    """H_b of the pair's mixture source."""
    b = Order.of(b)
    parts = pair.mixture()
    if b.is_zero:
        return max(c.renyi(b) for _, c in parts)
    if b.is_shannon:
        return math.fsum(w * c.renyi(b) for w, c in parts)
    if b.is_infinity:
        return -math.log(pair.expected_norm(b))
    return math.log(pair.expected_norm(b)) / theta(b)
