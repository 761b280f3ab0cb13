"""Finite-alphabet joint sources and their conditional Rényi quantities."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from renyisharp.core.errors import DomainError
from renyisharp.measures.orders import Order, OrderLike, theta
from renyisharp.measures.simplex import ProbVec, as_probvec, lr_norm, renyi_entropy
from renyisharp.utils.formatting import is_header_row


@dataclass(frozen=True, eq=False)
class CondSource:
    """A pair (X, Y) given by P_Y and one channel P_{X|Y}(·|y) per y.

    Every y must carry positive mass and every channel has the same X alphabet.
    """

    py: ProbVec
    channels: Tuple[ProbVec, ...]

    def __post_init__(self) -> None:
        py = as_probvec(self.py)
        channels = tuple(as_probvec(c) for c in self.channels)
        if len(channels) != py.n:
            raise DomainError(f"{len(channels)} channels for a Y alphabet of size {py.n}")
        if py.support_size != py.n:
            raise DomainError("channels attached to zero-mass y values")
        sizes = {c.n for c in channels}
        if len(sizes) != 1:
            raise DomainError(f"channels disagree on the X alphabet size: {sorted(sizes)}")
        object.__setattr__(self, "py", py)
        object.__setattr__(self, "channels", channels)

    @classmethod
    def from_channels(cls, channels: Sequence[ArrayLike], py: ArrayLike | None = None) -> "CondSource":
        """Uniform P_Y unless ``py`` is given."""
        k = len(channels)
        if py is None:
            py = np.full(k, 1.0 / k)
        return cls(as_probvec(py), tuple(as_probvec(c) for c in channels))

    @classmethod
    def unconditional(cls, P: ProbVec | ArrayLike) -> "CondSource":
        """Trivial Y: H_a(X|Y) = H_a(X)."""
        return cls(ProbVec([1.0]), (as_probvec(P),))

    @classmethod
    def from_csv_text(cls, text: str) -> "CondSource":
        """Rows ``P_Y(y), P(x_1|y), ..., P(x_n|y)``; a first row of column labels is a header."""
        rows = []
        first = True
        for row in csv.reader(io.StringIO(text)):
            cells = [c.strip() for c in row if c.strip()]
            if not cells or cells[0].startswith("#"):
                continue
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                if not (first and is_header_row(cells)):
                    raise DomainError(f"cannot parse source row {row!r}")
            first = False
        if not rows:
            raise DomainError("source CSV has no data rows")
        if any(len(r) < 2 for r in rows):
            raise DomainError("every source row needs P_Y(y) and at least one channel mass")
        return cls(ProbVec([r[0] for r in rows]), tuple(ProbVec(r[1:]) for r in rows))

    @classmethod
    def from_csv(cls, path: str | Path) -> "CondSource":
        return cls.from_csv_text(Path(path).read_text(encoding="utf-8"))

    def to_csv_text(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        for w, ch in zip(self.py.tolist(), self.channels):
            writer.writerow([repr(w)] + [repr(x) for x in ch.tolist()])
        return out.getvalue()

    @property
    def n(self) -> int:
        """X alphabet size."""
        return self.channels[0].n

    @property
    def k(self) -> int:
        """Y alphabet size."""
        return self.py.n

    def marginal_x(self) -> ProbVec:
        stacked = np.vstack([c.masses for c in self.channels])
        return ProbVec(self.py.masses @ stacked)

    def support_x(self) -> int:
        return self.marginal_x().support_size


def _expect(src: CondSource, values: Sequence[float]) -> float:
    return math.fsum(w * v for w, v in zip(src.py.tolist(), values))


def expected_norm(src: CondSource, r: OrderLike) -> float:
    """N_r(X|Y) = Σ_y P_Y(y) ‖P_{X|Y}(·|y)‖_r."""
    r = Order.of(r)
    if r.is_zero:
        raise DomainError("expected norm is undefined at order 0")
    return _expect(src, [lr_norm(c, r) for c in src.channels])


def cond_renyi(src: CondSource, a: OrderLike) -> float:
    """H_a(X|Y) = (a/(1−a)) ln N_a(X|Y) in nats."""
    a = Order.of(a)
    if a.is_zero:
        return max(math.log(c.support_size) for c in src.channels)
    if a.is_shannon:
        return _expect(src, [renyi_entropy(c, a) for c in src.channels])
    if a.is_infinity:
        return -math.log(expected_norm(src, a))
    return math.log(expected_norm(src, a)) / theta(a)


def min_error(src: CondSource) -> float:
    """P_e(X|Y) = 1 − N_∞(X|Y), the error of the MAP estimator."""
    return 1.0 - expected_norm(src, Order.of(math.inf))


def bhattacharyya(src: CondSource) -> float:
    """Z(X|Y) = (1/(n−1)) Σ_{x≠x'} E[√(P(x|Y) P(x'|Y))]."""
    n = src.n
    if n < 2:
        raise DomainError("Bhattacharyya parameter needs an X alphabet of size >= 2")
    pairs = []
    for c in src.channels:
        s = np.sqrt(c.masses)
        pairs.append(math.fsum(s.tolist()) ** 2 - math.fsum(c.masses.tolist()))
    return _expect(src, pairs) / (n - 1)
