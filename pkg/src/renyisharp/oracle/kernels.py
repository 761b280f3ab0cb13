"""Array forms of the extremal maps and the bound formulas, for whole source batches.

Each kernel takes a scalar ``Order`` and float arrays that broadcast against each
other, and mirrors the scalar function of the same name in ``measures.extremal``
or ``bounds.theorems``. Inputs outside a formula's domain by more than
``EDGE_TOL`` come back as NaN instead of raising; the scan reports them.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import entr

from renyisharp.bounds.couplers import tangency_roots
from renyisharp.measures.extremal import EDGE_TOL, INVERSE_XTOL
from renyisharp.measures.orders import HALF, Order, gamma, theta
from renyisharp.measures.simplex import ZERO_MASS
from renyisharp.utils.numeric import bisect_decreasing, snap_floor_array

Array = NDArray[np.float64]


def _f(x: ArrayLike) -> Array:
    return np.asarray(x, dtype=np.float64)


def entropy_range(value: ArrayLike, n: ArrayLike) -> Array:
    """``value`` clipped to [0, ln n]; NaN when it is further out than EDGE_TOL."""
    value, top = _f(value), np.log(_f(n))
    ok = (value >= -EDGE_TOL) & (value <= top + EDGE_TOL)
    return np.where(ok, np.clip(value, 0.0, top), np.nan)


def _nonnegative(value: ArrayLike) -> Array:
    value = _f(value)
    return np.where((value >= -EDGE_TOL) & np.isfinite(value), np.maximum(value, 0.0), np.nan)


def _error_probability(eps: ArrayLike) -> Array:
    eps = _f(eps)
    return np.where((eps >= -EDGE_TOL) & (eps < 1.0), np.maximum(eps, 0.0), np.nan)


# ---------------------------------------------------------------------------
# v_n(p)

def log_norm_v(n: ArrayLike, p: ArrayLike, r: Order) -> Array:
    n, p = _f(n), _f(p)
    if r.is_shannon:
        return np.zeros(np.broadcast(n, p).shape)
    if r.is_infinity:
        return np.log(p)
    q = (1.0 - p) / (n - 1)
    return np.log(p) + np.log1p((n - 1) * (q / p) ** r.value) / r.value


def norm_v(n: ArrayLike, p: ArrayLike, r: Order) -> Array:
    n, p = _f(n), _f(p)
    if r.is_shannon:
        return np.ones(np.broadcast(n, p).shape)
    if r.is_infinity:
        return p + 0.0 * n
    return np.exp(log_norm_v(n, p, r))


def renyi_v(n: ArrayLike, p: ArrayLike, a: Order) -> Array:
    n, p = _f(n), _f(p)
    if a.is_zero:
        return np.where(p < 1.0, np.log(n), 0.0)
    if a.is_shannon:
        return entr(p) + entr(1.0 - p) + (1.0 - p) * np.log(n - 1)
    if a.is_infinity:
        return -np.log(p) + 0.0 * n + 0.0
    return log_norm_v(n, p, a) / theta(a) + 0.0


def interval_v(n: ArrayLike, r: Order) -> Tuple[Array, Array]:
    u = _f(n) ** theta(r)
    return np.minimum(1.0, u), np.maximum(1.0, u)


def inv_entropy_v(n: ArrayLike, a: Order, mu: ArrayLike) -> Array:
    """p ∈ [1/n, 1] with H_a(v_n(p)) = mu; closed form at 1/2, 2 and ∞."""
    n = _f(n)
    mu = entropy_range(mu, n)
    lo = 1.0 / n
    if a.is_infinity:
        p = np.exp(-mu)
    elif a.is_finite and a.value == 0.5:
        e = np.exp(mu)
        root = np.sqrt(np.maximum(e * (n - 1) * (n - e), 0.0))
        p = (n * (n - 1) - (n - 2) * e + 2.0 * root) / (n * n)
    elif a.is_finite and a.value == 2.0:
        e = np.exp(mu)
        p = (1.0 + np.sqrt(np.maximum(np.exp(-mu) * (n - 1) * (n - e), 0.0))) / n
    else:
        p = bisect_decreasing(lambda x: renyi_v(n, x, a) - mu, lo, 1.0, xtol=INVERSE_XTOL)
    p = np.where(np.isnan(mu), np.nan, np.clip(p, lo, 1.0))
    return np.where(mu == 0.0, 1.0, p)


def inv_norm_v(n: ArrayLike, r: Order, t: ArrayLike) -> Array:
    n, t = _f(n), _f(t)
    lo, hi = interval_v(n, r)
    t = np.where((t >= lo - EDGE_TOL) & (t <= hi + EDGE_TOL) & (t > 0.0), np.clip(t, lo, hi), np.nan)
    if r.is_infinity:
        return np.clip(t, 1.0 / n, 1.0)
    return inv_entropy_v(n, r, np.log(t) / theta(r))


# ---------------------------------------------------------------------------
# w(p)

def w_cells(p: ArrayLike) -> Tuple[Array, Array]:
    """(⌊1/p⌋, remainder mass), with the integer snap at cell boundaries."""
    p = _f(p)
    k = snap_floor_array(1.0 / p)
    rem = 1.0 - k * p
    return k, np.where(rem < ZERO_MASS, 0.0, rem)


def norm_w(p: ArrayLike, r: Order) -> Array:
    p = _f(p)
    if r.is_shannon:
        return np.ones_like(p)
    if r.is_infinity:
        return p
    k, rem = w_cells(p)
    spread = np.exp(np.log(p) + np.log(k + (rem / p) ** r.value) / r.value)
    return np.where(rem == 0.0, k ** theta(r), spread)


def renyi_w(p: ArrayLike, a: Order) -> Array:
    p = _f(p)
    k, rem = w_cells(p)
    if a.is_zero:
        value = np.log(k + 1)
    elif a.is_shannon:
        value = k * entr(p) + entr(rem)
    elif a.is_infinity:
        value = -np.log(p)
    else:
        value = (np.log(p) + np.log(k + (rem / p) ** a.value) / a.value) / theta(a)
    return np.where(rem == 0.0, np.log(k), value)


def inv_entropy_w(a: Order, mu: ArrayLike) -> Array:
    """p ∈ (0, 1] with H_a(w(p)) = mu, located in the cell m = ⌊e^mu⌋."""
    mu = _nonnegative(mu)
    e = np.exp(mu)
    m = np.maximum(snap_floor_array(e), 1.0)
    if a.is_infinity:
        p = np.exp(-mu)
    elif a.is_finite and a.value == 0.5:
        root = np.sqrt(np.maximum(e * m * (1 + m - e), 0.0))
        p = ((m + 1) + (m - 1) * e + 2.0 * root) / (m * (1 + m) ** 2)
    elif a.is_finite and a.value == 2.0:
        root = np.sqrt(np.maximum(np.exp(-mu) * m * (1 + m - e), 0.0))
        p = (m + root) / (m * (1 + m))
    else:
        p = bisect_decreasing(
            lambda x: renyi_w(x, a) - mu, 1.0 / (m + 1), 1.0 / m, xtol=INVERSE_XTOL
        )
    p = np.where(np.isnan(mu), np.nan, p)
    return np.where(np.abs(e - m) <= 1e-12, 1.0 / m, p)


def inv_norm_w(r: Order, t: ArrayLike) -> Array:
    t = _f(t)
    if r.as_float() < 1.0:
        t = np.where((t >= 1.0 - EDGE_TOL) & np.isfinite(t), np.maximum(t, 1.0), np.nan)
    else:
        t = np.where((t > 0.0) & (t <= 1.0 + EDGE_TOL), np.minimum(t, 1.0), np.nan)
    if r.is_infinity:
        return t
    return inv_entropy_w(r, np.log(t) / theta(r))


# ---------------------------------------------------------------------------
# Unconditional bounds

def uncond_norm_sides(n: ArrayLike, t: ArrayLike, r: Order, s: Order) -> Tuple[Array, Array, bool]:
    """(‖·‖_s on the v_n side, on the w side, whether the v_n side is the lower one)."""
    v = norm_v(n, inv_norm_v(n, r, t), s)
    w = norm_w(inv_norm_w(r, t), s)
    return v, w, gamma(r, s) >= 1.0


def uncond_renyi_sides(n: ArrayLike, mu: ArrayLike, a: Order, b: Order) -> Tuple[Array, Array, bool]:
    """(H_b on the v_n side, on the w side, whether the v_n side is the lower one)."""
    n, mu = _f(n), _f(mu)
    v = renyi_v(n, inv_entropy_v(n, a, np.minimum(mu, np.log(n))), b)
    w = renyi_w(inv_entropy_w(a, mu), b)
    return v, w, a <= b


# ---------------------------------------------------------------------------
# Conditional bounds

def alpha_upper_from_infinity(n: ArrayLike, h_inf: ArrayLike, a: Order) -> Array:
    n = _f(n)
    ns = np.maximum(n, 2.0)
    h_inf = entropy_range(h_inf, n)
    p = np.clip(np.exp(-h_inf), 1.0 / ns, 1.0)
    return np.where(n == 1, h_inf * 0.0, renyi_v(ns, p, a))


def infinity_lower_from_alpha(n: ArrayLike, h_alpha: ArrayLike, a: Order) -> Array:
    n = _f(n)
    ns = np.maximum(n, 2.0)
    h_alpha = entropy_range(h_alpha, n)
    value = -np.log(inv_entropy_v(ns, a, np.minimum(h_alpha, np.log(ns))))
    return np.where(n == 1, h_alpha * 0.0, value)


def cond_bound_binary(value: ArrayLike, a: Order, b: Order) -> Array:
    return renyi_v(2.0, inv_entropy_v(2.0, a, entropy_range(value, 2.0)), b)


def cond_bound_st(n: ArrayLike, a: Order, b: Order, norm_a: ArrayLike) -> Array:
    """H_b of the (S, T) pair at N_a = norm_a; entries with n < 3 are NaN."""
    n, norm_a = np.broadcast_arrays(_f(n), _f(norm_a))
    out = np.full(n.shape, np.nan)
    for size in np.unique(n[n >= 3]):
        sel = n == size
        lo, hi = interval_v(size, a)
        N = norm_a[sel]
        N = np.where((N >= lo - EDGE_TOL) & (N <= hi + EDGE_TOL), np.clip(N, lo, hi), np.nan)
        roots = tangency_roots(int(size), a, b)
        uniform = float(size) ** theta(a)
        # t = t* belongs to the single-component regime
        near_uniform = N > roots.t_star if a.value < 1.0 else N < roots.t_star
        delta = np.clip((N - uniform) / (roots.t_star - uniform), 0.0, 1.0)
        mixed = (1.0 - delta) * norm_v(size, 1.0 / size, b) + delta * norm_v(size, roots.p_star, b)
        single = norm_v(size, inv_norm_v(size, a, N), b)
        out[sel] = np.log(np.where(near_uniform, mixed, single)) / theta(b)
    return out


def _uv_cell(a: Order, norm_a: ArrayLike) -> Tuple[Array, Array]:
    """(m, λ) of the (U, V) pair at N_a = norm_a."""
    N = _f(norm_a)
    th = theta(a)
    if a.as_float() < 1.0:
        N = np.where((N >= 1.0 - EDGE_TOL) & np.isfinite(N), np.maximum(N, 1.0), np.nan)
    else:
        N = np.where((N > 0.0) & (N <= 1.0 + EDGE_TOL), np.minimum(N, 1.0), np.nan)
    m = np.maximum(snap_floor_array(N ** (1.0 / th)), 1.0)
    top, bottom = (m + 1) ** th, m ** th
    return m, np.clip((top - N) / (top - bottom), 0.0, 1.0)


def cond_bound_uv(a: Order, b: Order, norm_a: ArrayLike) -> Array:
    """H_b of the (U, V) pair at N_a = norm_a."""
    m, lam = _uv_cell(a, norm_a)
    if b.is_zero:
        return np.where(lam < 1.0, np.log(m + 1), np.log(m))
    if b.is_shannon:
        return lam * np.log(m) + (1.0 - lam) * np.log(m + 1)
    if b.is_infinity:
        return -np.log(lam / m + (1.0 - lam) / (m + 1))
    tb = theta(b)
    return np.log(lam * m ** tb + (1.0 - lam) * (m + 1) ** tb) / tb


# ---------------------------------------------------------------------------
# Fano-type bounds

def reverse_fano_shannon(eps: ArrayLike) -> Array:
    eps = _error_probability(eps)
    m = snap_floor_array(1.0 / (1.0 - eps))
    head = (1.0 - (1.0 - eps) * m) * (1 + m) * np.log(1 + m)
    tail = (1.0 - (1.0 - eps) * (1 + m)) * m * np.log(m)
    return head - tail


def fano_lower_conditional(a: Order, eps: ArrayLike) -> Array:
    eps = _error_probability(eps)
    if a.is_shannon:
        return reverse_fano_shannon(eps)
    if a.is_infinity:
        return -np.log(1.0 - eps)
    m = snap_floor_array(1.0 / (1.0 - eps))
    alpha, c = a.value, 1.0 - eps
    inner = (1 + m) ** (1.0 / alpha) * (1.0 - c * m) - m ** (1.0 / alpha) * (1.0 - c * (1 + m))
    return alpha / (1.0 - alpha) * np.log(inner)


def fano_lower_unconditional(a: Order, eps: ArrayLike) -> Array:
    return renyi_w(1.0 - _error_probability(eps), a)


def fano_upper(a: Order, eps: ArrayLike, n: int) -> Array:
    eps = _error_probability(eps)
    if n == 1:
        return np.where(eps > 0.0, np.nan, 0.0)
    inside = renyi_v(n, np.maximum(1.0 - eps, 1.0 / n), a)
    return np.where(eps > (n - 1) / n, np.log(n), inside)


# ---------------------------------------------------------------------------
# Error probability and the Bhattacharyya parameter

def pe_upper(a: Order, value: ArrayLike) -> Array:
    value = _nonnegative(value)
    if a.is_infinity:
        return 1.0 - np.exp(-value)
    e = np.exp(value)
    m = np.maximum(snap_floor_array(e), 1.0)
    if a.is_shannon:
        lam = (np.log(m + 1) - value) / np.log((m + 1) / m)
        out = 1.0 - (lam / m + (1.0 - lam) / (m + 1))
        out = np.where(np.abs(e - m) <= 1e-12, 1.0 - 1.0 / m, out)
    else:
        inv = 1.0 / a.value
        num = (1 + m) ** inv - m ** inv - np.exp(theta(a) * value)
        den = m * (1 + m) ** inv - m ** inv * (1 + m)
        out = 1.0 - num / den
    return np.where(value == 0.0, 0.0, out)


def pe_lower(a: Order, value: ArrayLike, n: ArrayLike) -> Array:
    n = _f(n)
    ns = np.maximum(n, 2.0)
    value = entropy_range(value, n)
    out = 1.0 - inv_entropy_v(ns, a, np.minimum(value, np.log(ns)))
    return np.where(n == 1, value * 0.0, out)


def z_from_pe(eps: ArrayLike, n: int) -> Tuple[Array, Array]:
    eps = _f(eps)
    top = (n - 1) / n
    eps = np.where((eps >= -EDGE_TOL) & (eps <= top + EDGE_TOL), np.clip(eps, 0.0, top), np.nan)
    m = snap_floor_array(1.0 / (1.0 - eps))
    lower = (m + (1 + m) * (1.0 - (1.0 - eps) * m) - 1) / (n - 1)
    upper = (n - 2) / (n - 1) * eps + 2.0 * np.sqrt(eps * (1.0 - eps) / (n - 1))
    return np.maximum(lower, 0.0), np.minimum(upper, 1.0)


def pe_from_z(z: ArrayLike, n: int) -> Tuple[Array, Array]:
    z = _f(z)
    z = np.where((z >= -EDGE_TOL) & (z <= 1.0 + EDGE_TOL), np.clip(z, 0.0, 1.0), np.nan)
    root = np.sqrt(np.maximum((1.0 - z) * (1.0 + (n - 1) * z), 0.0))
    lower = (n - 1) / n**2 * (2.0 + (n - 2) * z - 2.0 * root)
    k = snap_floor_array(1.0 + (n - 1) * z)
    upper = 1.0 + ((n - 1) * z - 2 * k) / (k * (1 + k))
    return np.maximum(lower, 0.0), upper


def h2_hhalf_threshold(n: ArrayLike) -> Array:
    return 2.0 * np.log(1.0 + np.sqrt(_f(n) - 1)) - np.log(2.0)


def h2_upper_from_hhalf(value: ArrayLike) -> Array:
    value = _nonnegative(value)
    e = np.exp(value)
    m = np.maximum(snap_floor_array(e), 1.0)
    inner = (1 + m) ** 1.5 - m**1.5 + e * (np.sqrt(m) - np.sqrt(1 + m))
    return np.log(m * (1 + m)) - 2.0 * np.log(inner)


def h2_lower_from_hhalf(value: ArrayLike, n: ArrayLike) -> Array:
    n = _f(n)
    value = entropy_range(value, n)
    p = inv_entropy_v(n, HALF, value)
    below = np.log((n - 1) / (n * p * p - 2.0 * p + 1.0))
    e = np.exp(value)
    rt = np.sqrt(n - 1)
    denom = 2.0 + e * (2.0 * rt - n) + n * (n - rt - 2.0)
    above = 2.0 * np.log(n - 2.0 * rt) + np.log(n * (n - 1)) - 2.0 * np.log(denom)
    return np.where(value <= h2_hhalf_threshold(n), below, above)


# ---------------------------------------------------------------------------
# Best available pair

def _st_order(o: Order) -> bool:
    return o.is_finite and o.value >= 0.5


def _binary_supported(a: Order, b: Order) -> bool:
    if a.as_float() >= 0.5 and b.as_float() >= 0.5:
        return True
    return a.is_shannon and not b.is_zero and b.as_float() < 0.5


def feasible_bounds(n: ArrayLike, a: Order, b: Order, value: ArrayLike) -> Tuple[Array, Array]:
    """Tightest implemented (lower, upper) on H_b(X|Y) given H_a(X|Y) = value, a ≠ b."""
    n = _f(n)
    n, value = np.broadcast_arrays(n, entropy_range(value, n))
    ns = np.maximum(n, 2.0)
    lowers = [np.zeros(n.shape)]
    uppers = [np.log(n)]
    (uppers if a <= b else lowers).append(value)
    if not a.is_shannon:
        (uppers if a <= b else lowers).append(cond_bound_uv(a, b, np.exp(theta(a) * value)))
    if a.is_infinity and not b.is_infinity:
        uppers.append(alpha_upper_from_infinity(ns, np.minimum(value, np.log(ns)), b))
    if b.is_infinity and not a.is_infinity:
        lowers.append(infinity_lower_from_alpha(ns, np.minimum(value, np.log(ns)), a))
    if _binary_supported(a, b):
        binary = cond_bound_binary(np.minimum(value, np.log(2.0)), a, b)
        if a <= b:
            lowers.append(np.where(n == 2, binary, -np.inf))
        else:
            uppers.append(np.where(n == 2, binary, np.inf))
    if _st_order(a) and _st_order(b) and np.any(n >= 3):
        st = cond_bound_st(n, a, b, np.exp(theta(a) * value))
        if a < b:
            lowers.append(np.where(n >= 3, st, -np.inf))
        else:
            uppers.append(np.where(n >= 3, st, np.inf))
    lower = np.maximum.reduce(lowers)
    upper = np.minimum.reduce(uppers)
    trivial = n == 1
    return np.where(trivial, 0.0, lower), np.where(trivial, 0.0, upper)


__all__ = [
    "alpha_upper_from_infinity",
    "cond_bound_binary",
    "cond_bound_st",
    "cond_bound_uv",
    "entropy_range",
    "fano_lower_conditional",
    "fano_lower_unconditional",
    "fano_upper",
    "feasible_bounds",
    "h2_hhalf_threshold",
    "h2_lower_from_hhalf",
    "h2_upper_from_hhalf",
    "infinity_lower_from_alpha",
    "interval_v",
    "inv_entropy_v",
    "inv_entropy_w",
    "inv_norm_v",
    "inv_norm_w",
    "norm_v",
    "norm_w",
    "pe_from_z",
    "pe_lower",
    "pe_upper",
    "renyi_v",
    "renyi_w",
    "uncond_norm_sides",
    "uncond_renyi_sides",
    "z_from_pe",
]
