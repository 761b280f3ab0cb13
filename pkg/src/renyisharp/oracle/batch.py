"""Sources of one shape stacked into arrays, with the per-source quantities the checks read."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.special import entr

from renyisharp.core.errors import DomainError
from renyisharp.measures.conditional import CondSource
from renyisharp.measures.orders import Order, theta
from renyisharp.measures.simplex import ZERO_MASS, ProbVec

Array = NDArray[np.float64]


@dataclass(eq=False)
class SourceBatch:
    """B sources on a Y alphabet of size k and an X alphabet of size n.

    ``py`` has shape (B, k), ``channels`` (B, k, n) and ``index`` maps each row back
    to its position in the sequence the batch was built from. Quantities are
    computed once per batch and memoized.
    """

    py: Array
    channels: Array
    index: NDArray[np.intp] = None  # type: ignore[assignment]
    _memo: Dict[tuple, Array] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.py = np.asarray(self.py, dtype=np.float64)
        self.channels = np.asarray(self.channels, dtype=np.float64)
        if self.py.ndim != 2 or self.channels.ndim != 3 or self.channels.shape[:2] != self.py.shape:
            raise DomainError(
                f"batch shapes do not line up: py {self.py.shape}, channels {self.channels.shape}"
            )
        self.channels = np.where(self.channels < ZERO_MASS, 0.0, self.channels)
        if self.index is None:
            self.index = np.arange(self.size)

    @classmethod
    def from_sources(cls, sources: Sequence[CondSource]) -> List["SourceBatch"]:
        """One batch per (k, n) shape, in order of first appearance."""
        groups: Dict[tuple, List[int]] = {}
        for i, src in enumerate(sources):
            groups.setdefault((src.k, src.n), []).append(i)
        out = []
        for rows in groups.values():
            py = np.stack([sources[i].py.masses for i in rows])
            channels = np.stack([np.vstack([c.masses for c in sources[i].channels]) for i in rows])
            out.append(cls(py, channels, np.asarray(rows)))
        return out

    @property
    def size(self) -> int:
        return int(self.py.shape[0])

    @property
    def k(self) -> int:
        return int(self.py.shape[1])

    @property
    def n(self) -> int:
        return int(self.channels.shape[2])

    def __len__(self) -> int:
        return self.size

    def source(self, i: int) -> CondSource:
        return CondSource(ProbVec(self.py[i]), tuple(ProbVec(row) for row in self.channels[i]))

    def memo(self, key: tuple, compute: Callable[[], Array]) -> Array:
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    # ---- per channel, shape (B, k) -------------------------------------
    def weighted(self, values: Array) -> Array:
        """Σ_y P_Y(y) values[:, y], accumulated over y in order."""
        acc = self.py[:, 0] * values[:, 0]
        for y in range(1, self.k):
            acc = acc + self.py[:, y] * values[:, y]
        return acc

    def channel_support(self) -> Array:
        return self.memo(("support",), lambda: np.count_nonzero(self.channels, axis=2).astype(np.float64))

    def channel_max(self) -> Array:
        return self.memo(("max",), lambda: self.channels.max(axis=2))

    def _channel_log_norm(self, r: Order) -> Array:
        top = self.channel_max()
        ratios = (self.channels / top[..., None]) ** r.value
        return np.log(top) + np.log(ratios.sum(axis=2)) / r.value

    def channel_norm(self, r: Order) -> Array:
        if r.is_zero:
            raise DomainError("the l_r-norm diverges structurally at order 0")
        if r.is_shannon:
            return np.ones(self.py.shape)
        if r.is_infinity:
            return self.channel_max()
        return self.memo(("norm", r), lambda: np.exp(self._channel_log_norm(r)))

    def channel_renyi(self, a: Order) -> Array:
        def compute() -> Array:
            if a.is_zero:
                return np.log(self.channel_support())
            if a.is_shannon:
                return entr(self.channels).sum(axis=2)
            if a.is_infinity:
                return -np.log(self.channel_max())
            return a.value / (1.0 - a.value) * self._channel_log_norm(a)

        return self.memo(("renyi", a), compute)

    # ---- per source, shape (B,) ----------------------------------------
    def expected_norm(self, r: Order) -> Array:
        return self.memo(("expected_norm", r), lambda: self.weighted(self.channel_norm(r)))

    def cond_renyi(self, a: Order) -> Array:
        def compute() -> Array:
            if a.is_zero:
                return self.channel_renyi(a).max(axis=1)
            if a.is_shannon:
                return self.weighted(self.channel_renyi(a))
            if a.is_infinity:
                return -np.log(self.expected_norm(a))
            return np.log(self.expected_norm(a)) / theta(a)

        return self.memo(("cond_renyi", a), compute)

    def min_error(self) -> Array:
        return self.memo(("min_error",), lambda: 1.0 - self.weighted(self.channel_max()))

    def bhattacharyya(self) -> Array:
        if self.n < 2:
            raise DomainError("Bhattacharyya parameter needs an X alphabet of size >= 2")

        def compute() -> Array:
            pairs = np.sqrt(self.channels).sum(axis=2) ** 2 - self.channels.sum(axis=2)
            return self.weighted(pairs) / (self.n - 1)

        return self.memo(("bhattacharyya",), compute)

    def support_x(self) -> Array:
        def compute() -> Array:
            marginal = np.einsum("bk,bkn->bn", self.py, self.channels)
            return np.count_nonzero(marginal >= ZERO_MASS, axis=1).astype(np.float64)

        return self.memo(("support_x",), compute)

    def best_estimator_hit(self, chunk: int = 512) -> Array:
        """max over all maps f: Y → X of Σ_y P_Y(y) P(f(y)|y), by enumeration.

        Sums accumulate like ``weighted`` so the maximum equals 1 − ``min_error``
        exactly.
        """
        best = np.full(self.size, -np.inf)
        rows = np.arange(self.k)
        for start in range(0, self.n**self.k, chunk):
            codes = np.arange(start, min(start + chunk, self.n**self.k))
            # digit y of the code in base n is f(y), most significant first
            maps = (codes[:, None] // self.n ** np.arange(self.k - 1, -1, -1)) % self.n
            picked = self.channels[:, rows[None, :], maps]  # (B, C, k)
            acc = self.py[:, None, 0] * picked[..., 0]
            for y in range(1, self.k):
                acc = acc + self.py[:, None, y] * picked[..., y]
            best = np.maximum(best, acc.max(axis=1))
        return best


def grid_batch(points: Array, k: int) -> SourceBatch:
    """Every k-tuple of the rows of ``points`` as channels, with uniform P_Y.

    Tuples come in ``itertools.product`` order.
    """
    g = points.shape[0]
    idx = np.indices((g,) * k).reshape(k, -1).T
    channels = points[idx]
    py = np.full((idx.shape[0], k), 1.0 / k)
    return SourceBatch(py, channels)


__all__ = ["SourceBatch", "grid_batch"]
