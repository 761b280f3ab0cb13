"""Finitely supported probability distributions, their ℓ_r-norms and Rényi entropies.

All entropies are in nats. Sums go through ``math.fsum`` so results do not depend
on the order of the masses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import entr

from renyisharp.core.errors import DomainError
from renyisharp.measures.orders import Order, OrderLike
from renyisharp.utils.formatting import is_header_row

ZERO_MASS = 1e-15
NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProbVec:
    """A probability vector over a finite alphabet.

    Masses below ``ZERO_MASS`` become exact zeros; a total within
    ``NORMALIZATION_TOL`` of 1 is renormalized, anything further off is rejected.
    """

    masses: NDArray[np.float64]

    def __post_init__(self) -> None:
        arr = np.array(self.masses, dtype=np.float64).ravel()
        if arr.size == 0:
            raise DomainError("a distribution needs at least one mass")
        if not np.all(np.isfinite(arr)):
            raise DomainError("masses must be finite")
        if np.any(arr < -ZERO_MASS):
            raise DomainError(f"negative mass in {arr.tolist()}")
        arr[arr < ZERO_MASS] = 0.0
        total = math.fsum(arr.tolist())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DomainError(f"masses sum to {total!r}, not 1")
        if total != 1.0:
            arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "masses", arr)

    @classmethod
    def uniform(cls, n: int) -> "ProbVec":
        if n < 1:
            raise DomainError(f"alphabet size must be >= 1, got {n}")
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def point_mass(cls, n: int, index: int = 0) -> "ProbVec":
        arr = np.zeros(n)
        arr[index] = 1.0
        return cls(arr)

    @classmethod
    def from_csv(cls, text: str) -> "ProbVec":
        """Single-column CSV (one mass per line, blank lines and ``#`` comments ignored).

        A first line that is a column label is skipped as a header.
        """
        values = []
        first = True
        for line in text.splitlines():
            line = line.split("#")[0].strip().rstrip(",")
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError:
                if not (first and is_header_row([line])):
                    raise DomainError(f"cannot parse mass {line!r}")
            first = False
        return cls(values)

    def __len__(self) -> int:
        return int(self.masses.size)

    def __repr__(self) -> str:
        return f"ProbVec({self.masses.tolist()})"

    @property
    def n(self) -> int:
        return int(self.masses.size)

    def support(self) -> NDArray[np.intp]:
        return np.flatnonzero(self.masses > 0.0)

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.masses))

    def support_masses(self) -> NDArray[np.float64]:
        """Positive masses, largest first."""
        pos = self.masses[self.masses > 0.0]
        return np.sort(pos)[::-1]

    @property
    def max_mass(self) -> float:
        return float(self.masses.max())

    def tolist(self) -> list:
        return self.masses.tolist()


def as_probvec(P: ProbVec | ArrayLike) -> ProbVec:
    return P if isinstance(P, ProbVec) else ProbVec(P)


def _log_norm(P: ProbVec, r: Order) -> float:
    """ln ‖P‖_r, computed as ln m + (1/r) ln Σ (p/m)^r with m the largest mass."""
    if r.is_zero:
        raise DomainError("the l_r-norm diverges structurally at order 0")
    if r.is_shannon:
        return 0.0
    p = P.support_masses()
    top = float(p[0])
    if r.is_infinity:
        return math.log(top)
    ratios = np.power(p / top, r.value)
    return math.log(top) + math.log(math.fsum(ratios.tolist())) / r.value


def lr_norm(P: ProbVec | ArrayLike, r: OrderLike) -> float:
    """‖P‖_r over the support; max mass at r = ∞ and exactly 1 at r = 1."""
    P, r = as_probvec(P), Order.of(r)
    if r.is_shannon:
        return 1.0
    if r.is_infinity:
        return P.max_mass
    return math.exp(_log_norm(P, r))


def renyi_entropy(P: ProbVec | ArrayLike, a: OrderLike) -> float:
    """H_a(P) in nats, with the usual limits at orders 0, 1 and ∞."""
    P, a = as_probvec(P), Order.of(a)
    if a.is_zero:
        return math.log(P.support_size)
    if a.is_shannon:
        return shannon_entropy(P)
    if a.is_infinity:
        return -math.log(P.max_mass)
    return a.value / (1.0 - a.value) * _log_norm(P, a)


def shannon_entropy(P: ProbVec | ArrayLike) -> float:
    P = as_probvec(P)
    return math.fsum(entr(P.support_masses()).tolist())


def binary_entropy(t: float) -> float:
    """h₂(t) = −t ln t − (1−t) ln(1−t) with h₂(0) = h₂(1) = 0."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"binary entropy needs t in [0, 1], got {t!r}")
    return float(entr(t) + entr(1.0 - t))


def renyi_profile(P: ProbVec | ArrayLike, orders: Iterable[OrderLike]) -> list[float]:
    """H_a(P) for each order in ``orders``."""
    P = as_probvec(P)
    return [renyi_entropy(P, a) for a in orders]
