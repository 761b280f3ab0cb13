"""Source generators for the brute-force oracle."""

from __future__ import annotations

import itertools
import math
from typing import Iterator, List

import numpy as np
from scipy.special import comb

from renyisharp.core.errors import DomainError, ResourceError
from renyisharp.measures.conditional import CondSource
from renyisharp.measures.simplex import ProbVec
from renyisharp.oracle.batch import SourceBatch, grid_batch
from renyisharp.utils.numeric import snap_floor

DEFAULT_SEED = 0x5EED
DEFAULT_ENUMERATION_CAP = 200_000
DEFAULT_ESTIMATOR_CAP = 1_000_000


def _grid_resolution(step: float) -> int:
    if not (0.0 < step <= 1.0):
        raise DomainError(f"grid step must lie in (0, 1], got {step!r}")
    K = snap_floor(1.0 / step, tol=1e-9)
    if abs(K * step - 1.0) > 1e-9:
        raise DomainError(f"grid step {step!r} does not divide 1")
    return K


def simplex_grid(n: int, step: float) -> List[np.ndarray]:
    """All points of the n-simplex with coordinates in multiples of ``step``."""
    if n < 1:
        raise DomainError(f"simplex dimension must be >= 1, got {n}")
    K = _grid_resolution(step)
    points = []
    # stars and bars: choose n−1 bar positions among K+n−1 slots
    for bars in itertools.combinations(range(K + n - 1), n - 1):
        edges = (-1,) + bars + (K + n - 1,)
        counts = [edges[i + 1] - edges[i] - 1 for i in range(n)]
        points.append(np.array(counts, dtype=np.float64) / K)
    return points


def grid_count(n: int, k: int, step: float) -> int:
    """Number of sources ``grid_sources(n, k, step)`` yields."""
    K = _grid_resolution(step)
    return int(comb(K + n - 1, n - 1, exact=True)) ** k


def grid_sources(
    n: int,
    k: int,
    step: float,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Iterator[CondSource]:
    """Every source with uniform P_Y on k letters and channels on the step-grid.

    Raises:
        ResourceError: if the enumeration would exceed ``cap`` sources.
    """
    if n < 1 or k < 1:
        raise DomainError(f"grid needs n, k >= 1, got n={n}, k={k}")
    total = grid_count(n, k, step)
    if total > cap:
        raise ResourceError(f"grid n={n}, k={k}, step={step} has {total} sources (cap {cap})")
    channels = [ProbVec(p) for p in simplex_grid(n, step)]
    py = ProbVec(np.full(k, 1.0 / k))
    for combo in itertools.product(channels, repeat=k):
        yield CondSource(py, combo)


def grid_source_batch(
    n: int,
    k: int,
    step: float,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> SourceBatch:
    """The sources of ``grid_sources(n, k, step)``, in the same order, as one batch."""
    if n < 1 or k < 1:
        raise DomainError(f"grid needs n, k >= 1, got n={n}, k={k}")
    total = grid_count(n, k, step)
    if total > cap:
        raise ResourceError(f"grid n={n}, k={k}, step={step} has {total} sources (cap {cap})")
    return grid_batch(np.array(simplex_grid(n, step)), k)


def random_sources(
    seed: int = DEFAULT_SEED,
    count: int = 1000,
    max_n: int = 6,
    max_k: int = 6,
    min_n: int = 2,
) -> Iterator[CondSource]:
    """Seeded sources with channels and P_Y uniform on their simplices.

    Each mass vector normalizes independent exponential variates.
    """
    if max_n < min_n or max_k < 1:
        raise DomainError(f"invalid random source limits n<={max_n}, k<={max_k}")
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        k = int(rng.integers(1, max_k + 1))
        channels = rng.exponential(size=(k, n))
        channels /= channels.sum(axis=1, keepdims=True)
        py = np.maximum(rng.exponential(size=k), 1e-9)
        py /= py.sum()
        yield CondSource(ProbVec(py), tuple(ProbVec(row) for row in channels))


def verify_estimator_pe(src: CondSource, cap: int = DEFAULT_ESTIMATOR_CAP) -> float:
    """min over all maps f: Y → X of P[X ≠ f(Y)], by exhaustive enumeration."""
    total = src.n ** src.k
    if total > cap:
        raise ResourceError(f"{src.n}^{src.k} = {total} estimators exceed the cap {cap}")
    weights = src.py.tolist()
    rows = [c.masses.tolist() for c in src.channels]
    best = -1.0
    for f in itertools.product(range(src.n), repeat=src.k):
        hit = math.fsum(w * row[x] for w, row, x in zip(weights, rows, f))
        if hit > best:
            best = hit
    return 1.0 - best
