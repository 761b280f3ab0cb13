"""Sharp bounds between conditional Rényi entropies of two orders, and their corollaries.

Every function works on raw values; the ones that also accept a ``CondSource``
compute the fixed quantity from it first. Results that come with an attaining
construction carry it in ``BoundResult.witness``.

Bound identifiers (``theorem_id``):

==============  ==========================================================
norm-v, norm-w  ‖P‖_s given ‖P‖_r via v_n and w
renyi-v/-w      H_b(P) given H_a(P) via v_n and w
alpha-inf       H_a(X|Y) vs H_∞(X|Y)
binary          H_b(X|Y) given H_a(X|Y) for binary X
st, uv          H_b(X|Y) given H_a(X|Y) via the (S, T) and (U, V) pairs
fano-uncond     Rényi Fano bounds, unconditional
fano            Rényi Fano bounds, conditional
pe              P_e(X|Y) given H_a(X|Y)
z-pe, pe-z      Bhattacharyya parameter vs P_e(X|Y)
h2-hhalf        H_2(X|Y) given H_{1/2}(X|Y)
==============  ==========================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from renyisharp.bounds.couplers import (
    build_st_from_norm,
    build_uv_from_norm,
    pair_cond_renyi,
)
from renyisharp.core.errors import DomainError
from renyisharp.measures.conditional import CondSource, cond_renyi, expected_norm
from renyisharp.measures.extremal import (
    EDGE_TOL,
    inv_entropy_v,
    inv_entropy_w,
    inv_norm_v,
    inv_norm_w,
    norm_v,
    norm_w,
    renyi_v,
    renyi_w,
)
from renyisharp.measures.orders import HALF, INFINITY, Order, OrderLike, gamma, theta
from renyisharp.measures.simplex import ProbVec, as_probvec, binary_entropy, lr_norm, renyi_entropy
from renyisharp.utils.numeric import snap_floor

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True)
class BoundResult:
    kind: str
    value: float
    theorem_id: str
    witness: Optional[dict] = None

    def __post_init__(self) -> None:
        if self.kind not in (LOWER, UPPER):
            raise DomainError(f"bound kind must be 'lower' or 'upper', got {self.kind!r}")

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "value": self.value, "theorem_id": self.theorem_id}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _entropy_range(value: float, n: int) -> float:
    top = math.log(n)
    if not (-EDGE_TOL <= value <= top + EDGE_TOL):
        raise DomainError(f"entropy value {value!r} outside [0, ln {n}]")
    return min(max(value, 0.0), top)


def _check_n(n: Optional[int], what: str) -> int:
    if n is None:
        raise DomainError(f"{what} needs the alphabet size n")
    if int(n) != n or n < 1:
        raise DomainError(f"alphabet size must be a positive integer, got {n!r}")
    return int(n)


def _positive_order(a: OrderLike) -> Order:
    a = Order.of(a)
    if a.is_zero:
        raise DomainError("order 0 is not supported here")
    return a


def _norm_from_entropy(a: Order, value: float) -> float:
    """N_a(X|Y) from H_a(X|Y)."""
    return math.exp(theta(a) * value)


# ---------------------------------------------------------------------------
# Unconditional bounds

def uncond_norm_bounds(P: ProbVec, r: OrderLike, s: OrderLike) -> Tuple[BoundResult, BoundResult]:
    """Bounds on ‖P‖_s given ‖P‖_r, attained by v_n and w."""
    P = as_probvec(P)
    r, s = Order.of(r), Order.of(s)
    for o in (r, s):
        if o.is_zero or o.is_shannon:
            raise DomainError(f"norm bounds need orders in (0, 1) or (1, inf], got {o}")
    n = P.support_size
    t = lr_norm(P, r)
    if n == 1:
        return BoundResult(LOWER, 1.0, "norm-v"), BoundResult(UPPER, 1.0, "norm-w")
    p_v = inv_norm_v(n, r, t)
    p_w = inv_norm_w(r, t)
    v_side = (norm_v(n, p_v, s), {"family": "v", "n": n, "p": p_v})
    w_side = (norm_w(p_w, s), {"family": "w", "p": p_w})
    if gamma(r, s) >= 1.0:
        (lo, lo_w), (up, up_w), ids = v_side, w_side, ("norm-v", "norm-w")
    else:
        (lo, lo_w), (up, up_w), ids = w_side, v_side, ("norm-w", "norm-v")
    return BoundResult(LOWER, lo, ids[0], lo_w), BoundResult(UPPER, up, ids[1], up_w)


def uncond_bounds(P: ProbVec, a: OrderLike, b: OrderLike) -> Tuple[BoundResult, BoundResult]:
    """Bounds on H_b(P) given H_a(P), n = |supp(P)|."""
    P = as_probvec(P)
    a, b = _positive_order(a), _positive_order(b)
    n = P.support_size
    if n == 1:
        return BoundResult(LOWER, 0.0, "renyi-v"), BoundResult(UPPER, 0.0, "renyi-w")
    mu = renyi_entropy(P, a)
    p_v = inv_entropy_v(n, a, min(mu, math.log(n)))
    p_w = inv_entropy_w(a, mu)
    v_res = (renyi_v(n, p_v, b), {"family": "v", "n": n, "p": p_v})
    w_res = (renyi_w(p_w, b), {"family": "w", "p": p_w})
    if a <= b:
        return (
            BoundResult(LOWER, v_res[0], "renyi-v", v_res[1]),
            BoundResult(UPPER, w_res[0], "renyi-w", w_res[1]),
        )
    return (
        BoundResult(LOWER, w_res[0], "renyi-w", w_res[1]),
        BoundResult(UPPER, v_res[0], "renyi-v", v_res[1]),
    )


# ---------------------------------------------------------------------------
# H_a(X|Y) against H_∞(X|Y)

def _finite_positive(a: OrderLike) -> Order:
    a = _positive_order(a)
    if a.is_infinity:
        raise DomainError("order must be finite here")
    return a


def alpha_upper_from_infinity(n: int, h_inf: float, a: OrderLike) -> BoundResult:
    """H_a(X|Y) ≤ H_a(v_n(e^{−H_∞(X|Y)}))."""
    a = _finite_positive(a)
    n = _check_n(n, "alpha_upper_from_infinity")
    if n == 1:
        _entropy_range(h_inf, 1)
        return BoundResult(UPPER, 0.0, "alpha-inf")
    h_inf = _entropy_range(h_inf, n)
    p = min(max(math.exp(-h_inf), 1.0 / n), 1.0)
    return BoundResult(UPPER, renyi_v(n, p, a), "alpha-inf", {"family": "v", "n": n, "p": p})


def infinity_lower_from_alpha(n: int, h_alpha: float, a: OrderLike) -> BoundResult:
    """H_∞(X|Y) ≥ −ln H_a^{-1}(v_n : H_a(X|Y))."""
    a = _finite_positive(a)
    n = _check_n(n, "infinity_lower_from_alpha")
    if n == 1:
        _entropy_range(h_alpha, 1)
        return BoundResult(LOWER, 0.0, "alpha-inf")
    h_alpha = _entropy_range(h_alpha, n)
    p = inv_entropy_v(n, a, h_alpha)
    return BoundResult(LOWER, -math.log(p), "alpha-inf", {"family": "v", "n": n, "p": p})


def cond_bound_vs_infinity(
    a: OrderLike,
    source: Optional[CondSource] = None,
    n: Optional[int] = None,
    h_inf: Optional[float] = None,
    h_alpha: Optional[float] = None,
) -> Tuple[Optional[BoundResult], Optional[BoundResult]]:
    """(upper on H_a(X|Y), lower on H_∞(X|Y)); either half is None when its input is missing."""
    if source is not None:
        n = source.support_x()
        h_inf = cond_renyi(source, INFINITY)
        h_alpha = cond_renyi(source, a)
    n = _check_n(n, "cond_bound_vs_infinity")
    upper = alpha_upper_from_infinity(n, h_inf, a) if h_inf is not None else None
    lower = infinity_lower_from_alpha(n, h_alpha, a) if h_alpha is not None else None
    return upper, lower


# ---------------------------------------------------------------------------
# Binary X

def binary_orders_supported(a: OrderLike, b: OrderLike) -> bool:
    """Orders in [1/2, ∞], or a = 1 with b ∈ (0, 1/2)."""
    a, b = Order.of(a), Order.of(b)
    if a.as_float() >= 0.5 and b.as_float() >= 0.5:
        return True
    return a.is_shannon and not b.is_zero and b.as_float() < 0.5


def _binary_orders(a: Order, b: Order) -> None:
    if not binary_orders_supported(a, b):
        raise DomainError(
            f"binary bound needs orders in [1/2, inf] (or a = 1, b < 1/2), got a={a}, b={b}"
        )


def cond_bound_binary(value: float, a: OrderLike, b: OrderLike) -> BoundResult:
    """H_b(X|Y) bound for |supp(P_X)| ≤ 2 given H_a(X|Y) = value."""
    a, b = _positive_order(a), _positive_order(b)
    _binary_orders(a, b)
    value = _entropy_range(value, 2)
    p = inv_entropy_v(2, a, value)
    kind = LOWER if a <= b else UPPER
    return BoundResult(kind, renyi_v(2, p, b), "binary", {"family": "v", "n": 2, "p": p})


# ---------------------------------------------------------------------------
# (S, T) and (U, V)

def cond_bound_st(
    a: OrderLike,
    b: OrderLike,
    source: Optional[CondSource] = None,
    n: Optional[int] = None,
    value: Optional[float] = None,
) -> BoundResult:
    """Lower bound on H_b(X|Y) if a < b, upper if b < a; needs 3 ≤ n."""
    a, b = Order.of(a), Order.of(b)
    if source is not None:
        n = source.support_x()
        norm_a = expected_norm(source, a)
    else:
        n = _check_n(n, "cond_bound_st")
        if value is None:
            raise DomainError("cond_bound_st needs a source or a value")
        norm_a = _norm_from_entropy(a, _entropy_range(value, n))
    pair = build_st_from_norm(n, a, b, norm_a)
    kind = LOWER if a < b else UPPER
    return BoundResult(kind, pair_cond_renyi(pair, b), "st", pair.describe())


def cond_bound_uv(
    a: OrderLike,
    b: OrderLike,
    source: Optional[CondSource] = None,
    value: Optional[float] = None,
) -> BoundResult:
    """Upper bound on H_b(X|Y) if a ≤ b, lower if b ≤ a."""
    a, b = Order.of(a), _positive_order(b)
    if source is not None:
        norm_a = expected_norm(source, a)
    else:
        if value is None or not (value >= -EDGE_TOL) or math.isinf(value):
            raise DomainError(f"cond_bound_uv needs a finite value >= 0, got {value!r}")
        norm_a = _norm_from_entropy(a, max(value, 0.0))
    pair = build_uv_from_norm(a, norm_a)
    kind = UPPER if a <= b else LOWER
    return BoundResult(kind, pair_cond_renyi(pair, b), "uv", pair.describe())


# ---------------------------------------------------------------------------
# Fano-type bounds

def _fano_eps(eps: float) -> Tuple[float, int]:
    if not (0.0 <= eps < 1.0):
        raise DomainError(f"error probability must lie in [0, 1), got {eps!r}")
    return eps, snap_floor(1.0 / (1.0 - eps))


def reverse_fano_shannon(eps: float) -> float:
    """Least H(X|Y) compatible with P_e(X|Y) = eps."""
    eps, m = _fano_eps(eps)
    head = (1.0 - (1.0 - eps) * m) * (1 + m) * math.log(1 + m)
    tail = (1.0 - (1.0 - eps) * (1 + m)) * m * math.log(m)
    return head - tail


def fano_shannon_upper(eps: float, n: int) -> float:
    """h₂(ε) + ε ln(n − 1), capped at ln n beyond ε = (n−1)/n."""
    eps, _ = _fano_eps(eps)
    n = _check_n(n, "fano upper bound")
    if n == 1:
        return 0.0
    if eps > (n - 1) / n:
        return math.log(n)
    return binary_entropy(eps) + eps * math.log(n - 1)


def fano_lower(kind: str, a: OrderLike, eps: float) -> float:
    """Least H_a given P_e = eps (conditional) or max mass 1 − eps (unconditional)."""
    a = _positive_order(a)
    eps, m = _fano_eps(eps)
    if kind == "unconditional":
        return renyi_w(1.0 - eps, a)
    if kind != "conditional":
        raise DomainError(f"Fano kind must be 'conditional' or 'unconditional', got {kind!r}")
    if a.is_shannon:
        return reverse_fano_shannon(eps)
    if a.is_infinity:
        return -math.log(1.0 - eps)
    alpha = a.value
    c = 1.0 - eps
    inner = (1 + m) ** (1.0 / alpha) * (1.0 - c * m) - m ** (1.0 / alpha) * (1.0 - c * (1 + m))
    return alpha / (1.0 - alpha) * math.log(inner)


def fano_upper(a: OrderLike, eps: float, n: Optional[int]) -> float:
    """Largest H_a given P_e = eps on an alphabet of size n (both variants agree)."""
    a = _positive_order(a)
    eps, _ = _fano_eps(eps)
    n = _check_n(n, "Fano upper bound")
    if n == 1:
        if eps > 0.0:
            raise DomainError("P_e must be 0 on a one-letter alphabet")
        return 0.0
    if eps > (n - 1) / n:
        return math.log(n)
    return renyi_v(n, 1.0 - eps, a)


def fano_renyi(kind: str, a: OrderLike, eps: float, n: Optional[int] = None) -> Tuple[float, Optional[float]]:
    """(lower, upper) on H_a at P_e = eps; upper is None when n is not given."""
    lower = fano_lower(kind, a, eps)
    upper = fano_upper(a, eps, n) if n is not None else None
    return lower, upper


# ---------------------------------------------------------------------------
# Error probability given H_a(X|Y)

def _pe_value(value: float) -> float:
    if not (value >= -EDGE_TOL) or math.isinf(value):
        raise DomainError(f"entropy value must be finite and >= 0, got {value!r}")
    return max(value, 0.0)


def pe_upper(a: OrderLike, value: float) -> float:
    """Largest P_e(X|Y) compatible with H_a(X|Y) = value."""
    a = _positive_order(a)
    value = _pe_value(value)
    if value == 0.0:
        return 0.0
    if a.is_infinity:
        return 1.0 - math.exp(-value)
    e = math.exp(value)
    m = snap_floor(e)
    if a.is_shannon:
        if abs(e - m) <= 1e-12:
            return 1.0 - 1.0 / m
        lam = (math.log(m + 1) - value) / math.log((m + 1) / m)
        return 1.0 - (lam / m + (1.0 - lam) / (m + 1))
    inv = 1.0 / a.value
    num = (1 + m) ** inv - m ** inv - math.exp(theta(a) * value)
    den = m * (1 + m) ** inv - m ** inv * (1 + m)
    return 1.0 - num / den


def pe_lower(a: OrderLike, value: float, n: int) -> float:
    """Least P_e(X|Y) compatible with H_a(X|Y) = value on n letters."""
    a = _positive_order(a)
    n = _check_n(n, "pe_lower")
    if n == 1:
        _entropy_range(value, 1)
        return 0.0
    return 1.0 - inv_entropy_v(n, a, _entropy_range(value, n))


def pe_bounds(a: OrderLike, value: float, n: Optional[int] = None) -> Tuple[float, Optional[float]]:
    """(upper, lower) on P_e(X|Y); lower is None without n."""
    upper = pe_upper(a, value)
    lower = pe_lower(a, value, n) if n is not None else None
    return upper, lower


# ---------------------------------------------------------------------------
# Bhattacharyya parameter

def _bhat_n(n: int) -> int:
    n = _check_n(n, "Bhattacharyya bounds")
    if n < 2:
        raise DomainError("Bhattacharyya bounds need n >= 2")
    return n


def z_from_pe(eps: float, n: int) -> Tuple[float, float]:
    """(lower, upper) on Z(X|Y) given P_e(X|Y) = eps."""
    n = _bhat_n(n)
    top = (n - 1) / n
    if not (0.0 <= eps <= top + EDGE_TOL):
        raise DomainError(f"P_e must lie in [0, {top!r}] for n = {n}, got {eps!r}")
    eps = min(eps, top)
    m = snap_floor(1.0 / (1.0 - eps))
    lower = (m + (1 + m) * (1.0 - (1.0 - eps) * m) - 1) / (n - 1)
    upper = (n - 2) / (n - 1) * eps + 2.0 * math.sqrt(eps * (1.0 - eps) / (n - 1))
    return max(lower, 0.0), min(upper, 1.0)


def pe_from_z(z: float, n: int) -> Tuple[float, float]:
    """(lower, upper) on P_e(X|Y) given Z(X|Y) = z."""
    n = _bhat_n(n)
    if not (-EDGE_TOL <= z <= 1.0 + EDGE_TOL):
        raise DomainError(f"Bhattacharyya parameter must lie in [0, 1], got {z!r}")
    z = min(max(z, 0.0), 1.0)
    root = math.sqrt(max((1.0 - z) * (1.0 + (n - 1) * z), 0.0))
    lower = (n - 1) / n ** 2 * (2.0 + (n - 2) * z - 2.0 * root)
    k = snap_floor(1.0 + (n - 1) * z)
    upper = 1.0 + ((n - 1) * z - 2 * k) / (k * (1 + k))
    return max(lower, 0.0), upper


def bhattacharyya_bounds(direction: str, x: float, n: int) -> Tuple[float, float]:
    key = direction.lower().replace("-", "_")
    if key in ("z_from_pe", "z_pe"):
        return z_from_pe(x, n)
    if key in ("pe_from_z", "pe_z"):
        return pe_from_z(x, n)
    raise DomainError(f"unknown direction {direction!r}; use Z_from_Pe or Pe_from_Z")


# ---------------------------------------------------------------------------
# H_2 against H_{1/2}

def h2_hhalf_threshold(n: int) -> float:
    """H_{1/2}(X|Y) where the lower bound on H_2 switches form: 2 ln(1+√(n−1)) − ln 2."""
    n = _bhat_n(n)
    return 2.0 * math.log(1.0 + math.sqrt(n - 1)) - math.log(2.0)


def h2_upper_from_hhalf(value: float) -> float:
    value = _pe_value(value)
    e = math.exp(value)
    m = snap_floor(e)
    inner = (1 + m) ** 1.5 - m ** 1.5 + e * (math.sqrt(m) - math.sqrt(1 + m))
    return math.log(m * (1 + m)) - 2.0 * math.log(inner)


def h2_lower_from_hhalf(value: float, n: int) -> float:
    n = _bhat_n(n)
    value = _entropy_range(value, n)
    if value <= h2_hhalf_threshold(n):
        p = inv_entropy_v(n, HALF, value)
        return math.log((n - 1) / (n * p * p - 2.0 * p + 1.0))
    e = math.exp(value)
    rt = math.sqrt(n - 1)
    denom = 2.0 + e * (2.0 * rt - n) + n * (n - rt - 2.0)
    return 2.0 * math.log(n - 2.0 * rt) + math.log(n * (n - 1)) - 2.0 * math.log(denom)


def h2_vs_hhalf(value: float, n: Optional[int] = None) -> Tuple[Optional[float], float]:
    """(lower, upper) on H_2(X|Y) given H_{1/2}(X|Y) = value; lower needs n."""
    upper = h2_upper_from_hhalf(value)
    lower = h2_lower_from_hhalf(value, n) if n is not None else None
    return lower, upper


# ---------------------------------------------------------------------------
# Best available pair on H_b(X|Y) given H_a(X|Y)

def _st_order(o: Order) -> bool:
    return o.is_finite and o.value >= 0.5


def feasible_bounds(n: int, a: OrderLike, b: OrderLike, value: float) -> Tuple[BoundResult, BoundResult]:
    """Tightest implemented (lower, upper) on H_b(X|Y) given H_a(X|Y) = value."""
    a, b = _positive_order(a), _positive_order(b)
    n = _check_n(n, "feasible_bounds")
    value = _entropy_range(value, n)
    if a == b:
        return BoundResult(LOWER, value, "identity"), BoundResult(UPPER, value, "identity")
    if n == 1:
        return BoundResult(LOWER, 0.0, "trivial"), BoundResult(UPPER, 0.0, "trivial")

    candidates: List[BoundResult] = [
        BoundResult(LOWER, 0.0, "trivial"),
        BoundResult(UPPER, math.log(n), "trivial"),
        # order monotonicity
        BoundResult(UPPER if a <= b else LOWER, value, "order"),
    ]
    if not a.is_shannon:
        candidates.append(cond_bound_uv(a, b, value=value))
    if a.is_infinity and not b.is_infinity:
        candidates.append(alpha_upper_from_infinity(n, value, b))
    if b.is_infinity and not a.is_infinity:
        candidates.append(infinity_lower_from_alpha(n, value, a))
    if n == 2:
        try:
            _binary_orders(a, b)
        except DomainError:
            pass
        else:
            candidates.append(cond_bound_binary(value, a, b))
    if n >= 3 and _st_order(a) and _st_order(b):
        candidates.append(cond_bound_st(a, b, n=n, value=value))

    lower = max((c for c in candidates if c.kind == LOWER), key=lambda c: c.value)
    upper = min((c for c in candidates if c.kind == UPPER), key=lambda c: c.value)
    return lower, upper
