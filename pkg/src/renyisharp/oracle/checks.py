"""Named bound checks and the table the verifier looks them up in.

A check turns a batch of sources into slack samples: a slack is ``value − lower``
or ``upper − value``, so a negative slack is a violation. Checks that claim
sharpness also build witness sources on which their slacks must vanish.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from renyisharp.bounds.couplers import build_st_from_norm, build_uv_from_norm
from renyisharp.bounds.theorems import LOWER, UPPER, binary_orders_supported, h2_hhalf_threshold
from renyisharp.core.registry import Registry
from renyisharp.core.settings import SettingsManager
from renyisharp.measures.conditional import CondSource
from renyisharp.measures.extremal import ExtremalV, ExtremalW, interval_v, inv_entropy_v
from renyisharp.measures.orders import HALF, INFINITY, TWO, Order, theta
from renyisharp.oracle import kernels
from renyisharp.oracle.batch import SourceBatch
from renyisharp.oracle.sources import DEFAULT_ESTIMATOR_CAP

OrderPair = Tuple[Order, Order]


@dataclass(frozen=True)
class Sample:
    """Slacks of one bound side over a batch.

    ``slack`` has the batch on its first axis; ``mask`` (broadcastable to it)
    marks the entries the bound applies to.
    """

    key: str
    slack: NDArray[np.float64]
    sharp: bool = True
    mask: Optional[NDArray[np.bool_]] = None

    def _live(self) -> NDArray[np.bool_]:
        slack = np.asarray(self.slack)
        if self.mask is None:
            return np.ones(slack.shape, dtype=bool)
        return np.broadcast_to(self.mask, slack.shape)

    def values(self) -> NDArray[np.float64]:
        return np.asarray(self.slack)[self._live()]

    def rows(self) -> NDArray[np.intp]:
        """Batch row of each entry of ``values()``."""
        return np.nonzero(self._live())[0]


@dataclass(frozen=True)
class Witness:
    label: dict
    source: CondSource


def _slack(kind: str, bound, actual):
    return actual - bound if kind == LOWER else bound - actual


def _unconditional(masses) -> CondSource:
    return CondSource.unconditional(masses)


def _v_witnesses(ns: Sequence[int], ps: Sequence[float]) -> Iterator[Witness]:
    for n in ns:
        for p in ps:
            if 1.0 / n < p < 1.0:
                yield Witness({"family": "v", "n": n, "p": p}, _unconditional(ExtremalV(n, p).materialize()))


def _w_witnesses(ps: Sequence[float]) -> Iterator[Witness]:
    for p in ps:
        yield Witness({"family": "w", "p": p}, _unconditional(ExtremalW(p).materialize()))


def _uv_witnesses(a: Order, values: Sequence[float], width: int | None = None) -> Iterator[Witness]:
    for h in values:
        pair = build_uv_from_norm(a, math.exp(theta(a) * h))
        if width is not None and pair.m + 1 > width:
            continue
        yield Witness({"a": str(a), "value": h, **pair.describe()}, pair.to_source(width))


def _distinct_orders(pairs: Sequence[OrderPair]) -> List[Order]:
    seen: List[Order] = []
    for pair in pairs:
        for o in pair:
            if not o.is_zero and o not in seen:
                seen.append(o)
    return seen


class BoundCheck(ABC):
    """One family of inequalities checked over source batches."""

    check_id: str = ""
    description: str = ""
    tolerance_key: str = "violation_tol"
    needs_witness: bool = True

    def configure(self, settings: SettingsManager) -> None:
        """Read check-specific settings before a scan."""

    @abstractmethod
    def samples(self, batch: SourceBatch, pairs: Sequence[OrderPair]) -> List[Sample]:
        """Slack samples of this check on every source of ``batch``."""

    def witnesses(self, pairs: Sequence[OrderPair]) -> Iterator[Witness]:
        return iter(())

    def evaluate(self, src: CondSource, pairs: Sequence[OrderPair]) -> List[Sample]:
        """Samples on a single source, one scalar slack each."""
        (batch,) = SourceBatch.from_sources([src])
        with np.errstate(all="ignore"):
            samples = self.samples(batch, pairs)
        return [Sample(s.key, float(v), s.sharp) for s in samples for v in s.values()]

    def __str__(self) -> str:
        return f"{self.__class__.__name__}({self.check_id})"


# ---------------------------------------------------------------------------
# Unconditional bounds

def _skip_norm_pair(r: Order, s: Order) -> bool:
    return r == s or r.is_shannon or s.is_shannon or r.is_zero or s.is_zero


class _UnconditionalCheck(BoundCheck):
    """Per-channel bounds; ``family`` picks the v_n or the w side."""

    family = "v"

    def _sides(self, n, batch: SourceBatch, x: Order, y: Order):
        raise NotImplementedError

    def _actual(self, batch: SourceBatch, y: Order):
        raise NotImplementedError

    def _skip(self, x: Order, y: Order) -> bool:
        raise NotImplementedError

    def samples(self, batch, pairs):
        support = batch.channel_support()
        live = support >= 2
        if not live.any():
            return []
        n = np.maximum(support, 2.0)
        out = []
        for x, y in pairs:
            if self._skip(x, y):
                continue
            v, w, v_lower = self._sides(n, batch, x, y)
            side = v if self.family == "v" else w
            kind = LOWER if (self.family == "v") == v_lower else UPPER
            out.append(Sample(f"{x},{y}:{kind}", _slack(kind, side, self._actual(batch, y)), mask=live))
        return out


class _NormCheck(_UnconditionalCheck):
    def _skip(self, r, s):
        return _skip_norm_pair(r, s)

    def _sides(self, n, batch, r, s):
        return kernels.uncond_norm_sides(n, batch.channel_norm(r), r, s)

    def _actual(self, batch, s):
        return batch.channel_norm(s)


class NormVCheck(_NormCheck):
    check_id = "norm-v"
    description = "‖P‖_s against ‖P‖_r, the v_n side"

    def witnesses(self, pairs):
        return _v_witnesses((3, 5), (0.35, 0.6, 0.9))


class NormWCheck(_NormCheck):
    check_id = "norm-w"
    description = "‖P‖_s against ‖P‖_r, the w side"
    family = "w"

    def witnesses(self, pairs):
        return _w_witnesses((0.3, 0.45, 0.7))


class _RenyiCheck(_UnconditionalCheck):
    def _skip(self, a, b):
        return a == b or a.is_zero or b.is_zero

    def _sides(self, n, batch, a, b):
        return kernels.uncond_renyi_sides(n, batch.channel_renyi(a), a, b)

    def _actual(self, batch, b):
        return batch.channel_renyi(b)


class RenyiVCheck(_RenyiCheck):
    check_id = "renyi-v"
    description = "H_b(P) against H_a(P), the v_n side"

    def witnesses(self, pairs):
        return _v_witnesses((3, 5), (0.35, 0.6, 0.9))


class RenyiWCheck(_RenyiCheck):
    check_id = "renyi-w"
    description = "H_b(P) against H_a(P), the w side"
    family = "w"

    def witnesses(self, pairs):
        return _w_witnesses((0.3, 0.45, 0.7))


# ---------------------------------------------------------------------------
# Conditional bounds

class AlphaInfinityCheck(BoundCheck):
    check_id = "alpha-inf"
    description = "H_a(X|Y) against H_inf(X|Y)"

    @staticmethod
    def _orders(pairs):
        out = []
        for a, b in pairs:
            if a.is_infinity != b.is_infinity:
                other = b if a.is_infinity else a
                if not other.is_zero and other not in out:
                    out.append(other)
        return out

    def samples(self, batch, pairs):
        n = batch.support_x()
        live = n >= 2
        if not live.any():
            return []
        h_inf = batch.cond_renyi(INFINITY)
        out = []
        for alpha in self._orders(pairs):
            h_alpha = batch.cond_renyi(alpha)
            upper = kernels.alpha_upper_from_infinity(n, h_inf, alpha)
            lower = kernels.infinity_lower_from_alpha(n, h_alpha, alpha)
            out.append(Sample(f"{alpha}:upper", upper - h_alpha, mask=live))
            out.append(Sample(f"{alpha}:lower", h_inf - lower, mask=live))
        return out

    def witnesses(self, pairs):
        return _v_witnesses((2, 3, 5), (0.55, 0.8))


class BinaryCheck(BoundCheck):
    check_id = "binary"
    description = "H_b(X|Y) against H_a(X|Y) for binary X"

    def samples(self, batch, pairs):
        live = batch.support_x() == 2
        if not live.any():
            return []
        out = []
        for a, b in pairs:
            if a == b or not binary_orders_supported(a, b):
                continue
            value = np.minimum(batch.cond_renyi(a), math.log(2.0))
            bound = kernels.cond_bound_binary(value, a, b)
            kind = LOWER if a <= b else UPPER
            out.append(Sample(f"{a},{b}:{kind}", _slack(kind, bound, batch.cond_renyi(b)), mask=live))
        return out

    def witnesses(self, pairs):
        return _v_witnesses((2,), (0.6, 0.85))


def _st_pair_ok(a: Order, b: Order) -> bool:
    return a != b and all(o.is_finite and o.value >= 0.5 for o in (a, b))


class STCheck(BoundCheck):
    check_id = "st"
    description = "H_b(X|Y) against H_a(X|Y) via the (S, T) pair"

    def samples(self, batch, pairs):
        n = batch.support_x()
        live = n >= 3
        if not live.any():
            return []
        out = []
        for a, b in pairs:
            if not _st_pair_ok(a, b):
                continue
            bound = kernels.cond_bound_st(n, a, b, batch.expected_norm(a))
            kind = LOWER if a < b else UPPER
            out.append(Sample(f"{a},{b}:{kind}", _slack(kind, bound, batch.cond_renyi(b)), mask=live))
        return out

    def witnesses(self, pairs):
        for a, b in pairs:
            if not _st_pair_ok(a, b):
                continue
            for n in (3, 4):
                lo, hi = interval_v(n, a)
                for frac in (0.15, 0.5, 0.85):
                    pair = build_st_from_norm(n, a, b, lo + frac * (hi - lo))
                    yield Witness({"a": str(a), "b": str(b), **pair.describe()}, pair.to_source(n))


class UVCheck(BoundCheck):
    check_id = "uv"
    description = "H_b(X|Y) against H_a(X|Y) via the (U, V) pair"

    @staticmethod
    def _pair_ok(a: Order, b: Order) -> bool:
        return a != b and not (a.is_zero or a.is_shannon or b.is_zero)

    def samples(self, batch, pairs):
        out = []
        for a, b in pairs:
            if not self._pair_ok(a, b):
                continue
            bound = kernels.cond_bound_uv(a, b, batch.expected_norm(a))
            kind = UPPER if a <= b else LOWER
            out.append(Sample(f"{a},{b}:{kind}", _slack(kind, bound, batch.cond_renyi(b))))
            if a < b:
                # must improve on H_b <= H_a
                out.append(Sample(f"{a},{b}:order", batch.cond_renyi(a) - bound, sharp=False))
        return out

    def witnesses(self, pairs):
        for a, b in pairs:
            if self._pair_ok(a, b):
                yield from _uv_witnesses(a, (0.4, 0.9, 1.3))


# ---------------------------------------------------------------------------
# Fano-type and error-probability bounds

class FanoUnconditionalCheck(BoundCheck):
    check_id = "fano-uncond"
    description = "H_a(P) against 1 − max P"

    def samples(self, batch, pairs):
        eps = 1.0 - batch.channel_max()
        out = []
        for a in _distinct_orders(pairs):
            actual = batch.channel_renyi(a)
            out.append(Sample(f"{a}:lower", actual - kernels.fano_lower_unconditional(a, eps)))
            out.append(Sample(f"{a}:upper", kernels.fano_upper(a, eps, batch.n) - actual))
        return out

    def witnesses(self, pairs):
        yield from _w_witnesses((0.3, 0.45, 0.7))
        yield from _v_witnesses((4,), (0.4, 0.7))


class FanoCheck(BoundCheck):
    check_id = "fano"
    description = "H_a(X|Y) against P_e(X|Y)"

    def samples(self, batch, pairs):
        eps = batch.min_error()
        out = []
        for a in _distinct_orders(pairs):
            actual = batch.cond_renyi(a)
            out.append(Sample(f"{a}:lower", actual - kernels.fano_lower_conditional(a, eps)))
            out.append(Sample(f"{a}:upper", kernels.fano_upper(a, eps, batch.n) - actual))
        return out

    def witnesses(self, pairs):
        yield from _uv_witnesses(INFINITY, (0.3, 0.8, 1.2), width=4)
        yield from _v_witnesses((4,), (0.4, 0.7))


class PeCheck(BoundCheck):
    check_id = "pe"
    description = "P_e(X|Y) against H_a(X|Y)"

    def samples(self, batch, pairs):
        n = batch.support_x()
        eps = batch.min_error()
        out = []
        for a in _distinct_orders(pairs):
            value = batch.cond_renyi(a)
            out.append(Sample(f"{a}:upper", kernels.pe_upper(a, value) - eps))
            lower = kernels.pe_lower(a, np.minimum(value, np.log(n)), n)
            out.append(Sample(f"{a}:lower", eps - lower))
        return out

    def witnesses(self, pairs):
        for a in _distinct_orders(pairs):
            yield from _uv_witnesses(INFINITY if a.is_shannon else a, (0.3, 0.8, 1.2))
        yield from _v_witnesses((3, 4), (0.4, 0.7))


class _BhattacharyyaCheck(BoundCheck):
    def witnesses(self, pairs):
        yield from _uv_witnesses(INFINITY, (0.3, 0.8, 1.2), width=4)
        yield from _v_witnesses((4,), (0.4, 0.7))


class ZFromPeCheck(_BhattacharyyaCheck):
    check_id = "z-pe"
    description = "Z(X|Y) against P_e(X|Y)"

    def samples(self, batch, pairs):
        if batch.n < 2:
            return []
        z = batch.bhattacharyya()
        lo, up = kernels.z_from_pe(batch.min_error(), batch.n)
        return [Sample("lower", z - lo), Sample("upper", up - z)]


class PeFromZCheck(_BhattacharyyaCheck):
    check_id = "pe-z"
    description = "P_e(X|Y) against Z(X|Y)"

    def samples(self, batch, pairs):
        if batch.n < 2:
            return []
        eps = batch.min_error()
        lo, up = kernels.pe_from_z(batch.bhattacharyya(), batch.n)
        return [Sample("lower", eps - lo), Sample("upper", up - eps)]


class H2HhalfCheck(BoundCheck):
    check_id = "h2-hhalf"
    description = "H_2(X|Y) against H_1/2(X|Y)"

    def samples(self, batch, pairs):
        n = batch.support_x()
        live = n >= 2
        if not live.any():
            return []
        n = np.maximum(n, 2.0)
        value = np.minimum(batch.cond_renyi(HALF), np.log(n))
        lower = kernels.h2_lower_from_hhalf(value, n)
        upper = kernels.h2_upper_from_hhalf(value)
        actual = batch.cond_renyi(TWO)
        return [Sample("lower", actual - lower, mask=live), Sample("upper", upper - actual, mask=live)]

    def witnesses(self, pairs):
        yield from _uv_witnesses(HALF, (0.4, 0.9, 1.3))
        # below the threshold the v_n family attains the lower bound
        for n in (3, 4):
            p = inv_entropy_v(n, HALF, 0.5 * h2_hhalf_threshold(n))
            yield Witness({"family": "v", "n": n, "p": p}, _unconditional(ExtremalV(n, p).materialize()))
        # above it the (S, T) pair does
        for n in (3, 4):
            lo, hi = interval_v(n, HALF)
            pair = build_st_from_norm(n, HALF, TWO, lo + 0.97 * (hi - lo))
            yield Witness({"a": "0.5", "b": "2.0", **pair.describe()}, pair.to_source(n))


class FeasibleCheck(BoundCheck):
    check_id = "feasible"
    description = "H_b(X|Y) inside the best available bounds given H_a(X|Y)"
    needs_witness = False

    def samples(self, batch, pairs):
        n = batch.support_x()
        out = []
        for a, b in pairs:
            if a == b or a.is_zero or b.is_zero:
                continue
            value = np.minimum(batch.cond_renyi(a), np.log(n))
            lower, upper = kernels.feasible_bounds(n, a, b, value)
            actual = batch.cond_renyi(b)
            out.append(Sample(f"{a},{b}:lower", actual - lower, False))
            out.append(Sample(f"{a},{b}:upper", upper - actual, False))
        return out


# ---------------------------------------------------------------------------
# Identities and the estimator

class IdentityCheck(BoundCheck):
    check_id = "identities"
    description = "exp(−H_inf) = 1 − P_e and H_1/2 = ln(1 + (n−1)Z)"
    tolerance_key = "identity_tol"
    needs_witness = False

    def samples(self, batch, pairs):
        residual = np.abs(np.exp(-batch.cond_renyi(INFINITY)) - (1.0 - batch.min_error()))
        out = [Sample("min-error", -residual, False)]
        if batch.n >= 2:
            z = batch.bhattacharyya()
            residual = np.abs(batch.cond_renyi(HALF) - np.log1p((batch.n - 1) * z))
            out.append(Sample("bhattacharyya", -residual, False))
        return out


class EstimatorCheck(BoundCheck):
    check_id = "estimator"
    description = "min_error equals the best of all deterministic estimators"
    tolerance_key = ""
    needs_witness = False

    def __init__(self, scan_limit: int = DEFAULT_ESTIMATOR_CAP) -> None:
        self.scan_limit = scan_limit

    def configure(self, settings):
        self.scan_limit = int(settings.get("estimator_cap", DEFAULT_ESTIMATOR_CAP))

    def samples(self, batch, pairs):
        # estimators enumerated per source
        if batch.n**batch.k > self.scan_limit:
            return []
        brute = 1.0 - batch.best_estimator_hit()
        return [Sample("exact", -np.abs(brute - batch.min_error()), False)]


CHECKS: Registry[BoundCheck] = Registry("check", BoundCheck, build=lambda cls: cls())

for _check in (
    NormVCheck,
    NormWCheck,
    RenyiVCheck,
    RenyiWCheck,
    AlphaInfinityCheck,
    BinaryCheck,
    STCheck,
    UVCheck,
    FanoUnconditionalCheck,
    FanoCheck,
    PeCheck,
    ZFromPeCheck,
    PeFromZCheck,
    H2HhalfCheck,
    FeasibleCheck,
    IdentityCheck,
    EstimatorCheck,
):
    CHECKS.register(_check.check_id, _check)
del _check
