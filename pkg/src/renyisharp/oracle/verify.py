"""Run bound checks over grid and random sources and aggregate the outcome."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from renyisharp.core.errors import RenyiSharpError
from renyisharp.core.settings import SettingsManager
from renyisharp.measures.conditional import CondSource
from renyisharp.oracle.batch import SourceBatch
from renyisharp.oracle.checks import CHECKS, BoundCheck, OrderPair
from renyisharp.oracle.sources import grid_source_batch, random_sources

ALL_CHECKS = "all"


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``max_violation`` is the largest negative slack seen (0 when none), ``min_gap``
    the smallest non-negative slack on scanned sources. ``grid_gaps`` and
    ``witness_gaps`` hold, per sharp bound side, the smallest |slack| on scanned
    sources and on witnesses. A side is sharp when its witness gap is within
    ``sharp_tolerance`` or its scanned gap within ``sharp_tolerance_grid``.
    ``merge`` is associative so partial reports from workers combine in any
    grouping.
    """

    theorem_id: str
    sources_scanned: int = 0
    max_violation: float = 0.0
    min_gap: float = math.inf
    witness: Optional[dict] = None
    witness_gap: Optional[float] = None
    errors: List[str] = field(default_factory=list)
    tolerance: float = 1e-9
    sharp_tolerance: float = 1e-8
    sharp_tolerance_grid: float = 1e-3
    needs_witness: bool = True
    grid_gaps: Dict[str, float] = field(default_factory=dict)
    witness_gaps: Dict[str, float] = field(default_factory=dict)
    children: List["VerificationReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.children:
            return all(c.passed for c in self.children)
        if self.errors or self.max_violation > self.tolerance:
            return False
        if not self.needs_witness:
            return True
        if self.witness_gap is None:
            return False
        if self.witness_gap <= self.sharp_tolerance:
            return True
        return bool(self.witness_gaps) and all(
            gap <= self.sharp_tolerance
            or self.grid_gaps.get(key, math.inf) <= self.sharp_tolerance_grid
            for key, gap in self.witness_gaps.items()
        )

    def add(self, slack: float) -> None:
        self.add_many(np.asarray([slack], dtype=np.float64))

    def add_many(self, slacks: np.ndarray, sharp_key: Optional[str] = None) -> None:
        """Fold finite slacks in; ``sharp_key`` also tracks the side's closest approach."""
        if slacks.size == 0:
            return
        low = float(slacks.min())
        if low < 0.0:
            self.max_violation = max(self.max_violation, -low)
        nonneg = slacks[slacks >= 0.0]
        if nonneg.size:
            self.min_gap = min(self.min_gap, float(nonneg.min()))
        if sharp_key is not None:
            gap = float(np.abs(slacks).min())
            self.grid_gaps[sharp_key] = min(self.grid_gaps.get(sharp_key, math.inf), gap)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            theorem_id=self.theorem_id,
            sources_scanned=self.sources_scanned + other.sources_scanned,
            max_violation=max(self.max_violation, other.max_violation),
            min_gap=min(self.min_gap, other.min_gap),
            witness=self.witness if self.witness is not None else other.witness,
            witness_gap=_max_optional(self.witness_gap, other.witness_gap),
            errors=self.errors + other.errors,
            tolerance=self.tolerance,
            sharp_tolerance=self.sharp_tolerance,
            sharp_tolerance_grid=self.sharp_tolerance_grid,
            needs_witness=self.needs_witness,
            grid_gaps=_min_by_key(self.grid_gaps, other.grid_gaps),
            witness_gaps=_min_by_key(self.witness_gaps, other.witness_gaps),
            children=self.children + other.children,
        )

    def to_dict(self) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "sources_scanned": self.sources_scanned,
            "max_violation": self.max_violation,
            "min_gap": None if math.isinf(self.min_gap) else self.min_gap,
            "witness": self.witness,
            "pass": self.passed,
        }
        if self.witness_gap is not None:
            out["witness_gap"] = self.witness_gap
        if self.grid_gaps:
            out["grid_gaps"] = dict(self.grid_gaps)
        if self.errors:
            out["errors"] = self.errors[:20]
            out["error_count"] = len(self.errors)
        if self.children:
            out["checks"] = [c.to_dict() for c in self.children]
        return out


def _max_optional(x: Optional[float], y: Optional[float]) -> Optional[float]:
    if x is None:
        return y
    if y is None:
        return x
    return max(x, y)


def _min_by_key(x: Dict[str, float], y: Dict[str, float]) -> Dict[str, float]:
    out = dict(x)
    for key, gap in y.items():
        out[key] = min(out.get(key, math.inf), gap)
    return out


def _blank(template: VerificationReport) -> VerificationReport:
    return VerificationReport(
        theorem_id=template.theorem_id,
        tolerance=template.tolerance,
        sharp_tolerance=template.sharp_tolerance,
        sharp_tolerance_grid=template.sharp_tolerance_grid,
        needs_witness=template.needs_witness,
    )


def _scan_batch(
    check: BoundCheck,
    batch: SourceBatch,
    pairs: Sequence[OrderPair],
    template: VerificationReport,
) -> VerificationReport:
    report = _blank(template)
    report.sources_scanned = batch.size
    try:
        with np.errstate(all="ignore"):
            samples = check.samples(batch, pairs)
    except RenyiSharpError as e:
        report.errors.append(
            f"{type(e).__name__}: {e} | source={batch.source(0).to_csv_text().strip()!r}"
        )
        return report
    for sample in samples:
        values = sample.values()
        bad = np.isnan(values)
        if bad.any():
            row = int(sample.rows()[np.argmax(bad)])
            report.errors.append(
                f"{sample.key}: {int(bad.sum())} undefined slack(s) | "
                f"source={batch.source(row).to_csv_text().strip()!r}"
            )
            values = values[~bad]
        report.add_many(values, sample.key if sample.sharp else None)
    return report


def _witness_outcome(
    check: BoundCheck, pairs: Sequence[OrderPair]
) -> Tuple[Dict[str, Tuple[float, dict]], List[str]]:
    """Best witness per sharp side: key -> (min |slack|, witness label)."""
    witnesses = list(check.witnesses(pairs))
    best: Dict[str, Tuple[float, dict]] = {}
    errors: List[str] = []
    for batch in SourceBatch.from_sources([w.source for w in witnesses]):
        try:
            with np.errstate(all="ignore"):
                samples = check.samples(batch, pairs)
        except RenyiSharpError as e:
            label = witnesses[int(batch.index[0])].label
            errors.append(f"witness {label}: {type(e).__name__}: {e}")
            continue
        for s in samples:
            if not s.sharp:
                continue
            gaps = np.abs(s.values())
            if gaps.size == 0 or np.isnan(gaps).all():
                continue
            i = int(np.nanargmin(gaps))
            label = witnesses[int(batch.index[s.rows()[i]])].label
            if s.key not in best or gaps[i] < best[s.key][0]:
                best[s.key] = (float(gaps[i]), label)
    return best, errors


def collect_batches(
    settings: SettingsManager,
    seed: int,
    budget: int,
    grid_specs: Optional[Sequence[Sequence[float]]] = None,
) -> List[SourceBatch]:
    """Grid batches from ``grid_specs`` (settings by default) plus ``budget`` random sources."""
    specs = grid_specs if grid_specs is not None else settings.get("grid_specs", [])
    cap = int(settings.get("enumeration_cap", 200000))
    out = [grid_source_batch(int(n), int(k), float(step), cap=cap) for n, k, step in specs]
    randoms = list(
        random_sources(
            seed,
            budget,
            max_n=int(settings.get("random_max_n", 6)),
            max_k=int(settings.get("random_max_k", 6)),
        )
    )
    out.extend(SourceBatch.from_sources(randoms))
    return out


def run_check(
    check: BoundCheck,
    batches: Sequence[SourceBatch],
    pairs: Sequence[OrderPair],
    settings: SettingsManager,
    threads: int = 1,
) -> VerificationReport:
    check.configure(settings)
    tolerance = float(settings.get(check.tolerance_key, 0.0)) if check.tolerance_key else 0.0
    template = VerificationReport(
        theorem_id=check.check_id,
        tolerance=tolerance,
        sharp_tolerance=float(settings.get("sharp_tol_witness", 1e-8)),
        sharp_tolerance_grid=float(settings.get("sharp_tol_grid", 1e-3)),
        needs_witness=check.needs_witness,
    )
    if threads > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _scan_batch(check, b, pairs, template), batches))
    else:
        parts = [_scan_batch(check, b, pairs, template) for b in batches]

    report = _blank(template)
    for part in parts:
        report = report.merge(part)

    if check.needs_witness:
        best, errors = _witness_outcome(check, pairs)
        report.errors.extend(errors)
        report.witness_gaps = {key: gap for key, (gap, _) in best.items()}
        if best:
            key, (gap, label) = max(best.items(), key=lambda kv: kv[1][0])
            report.witness_gap = gap
            report.witness = {"key": key, "gap": gap, **label}
    return report


def verify_bound(
    theorem_id: str,
    settings: Optional[SettingsManager] = None,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    grid_specs: Optional[Sequence[Sequence[float]]] = None,
    order_pairs: Optional[Sequence[OrderPair]] = None,
    sources: Optional[Sequence[CondSource]] = None,
) -> VerificationReport:
    """Scan grid and random sources against one check, or every check for ``all``.

    Failures are report content; only an unknown ``theorem_id`` raises.
    """
    settings = settings or SettingsManager()
    seed = int(settings.get("seed", 0x5EED)) if seed is None else seed
    budget = int(settings.get("random_budget", 10000)) if budget is None else budget
    threads = settings.thread_count() if threads is None else threads
    pairs = list(order_pairs) if order_pairs is not None else settings.order_pairs()

    if theorem_id == ALL_CHECKS:
        ids = CHECKS.names()
    else:
        CHECKS.create(theorem_id)  # raises on unknown ids
        ids = [theorem_id]

    started = time.perf_counter()
    if sources is not None:
        batches = SourceBatch.from_sources(list(sources))
    else:
        batches = collect_batches(settings, seed, budget, grid_specs)
    estimator_batches: Optional[List[SourceBatch]] = None

    reports = []
    for check_id in ids:
        check = CHECKS.create(check_id)
        scan = batches
        if check_id == "estimator" and grid_specs is None and sources is None:
            if estimator_batches is None:
                estimator_batches = collect_batches(
                    settings, seed, budget, settings.get("estimator_grid_specs", [])
                )
            scan = estimator_batches
        report = run_check(check, scan, pairs, settings, threads=threads)
        reports.append(report)
        if settings.get("log_oracle", True):
            settings.log_info(
                "Oracle",
                f"check {check_id}: {'pass' if report.passed else 'FAIL'}",
                {
                    "sources": report.sources_scanned,
                    "max_violation": report.max_violation,
                    "witness_gap": report.witness_gap,
                    "errors": len(report.errors),
                },
            )

    if len(reports) == 1:
        result = reports[0]
    else:
        result = VerificationReport(theorem_id=ALL_CHECKS, needs_witness=False, children=reports)
        result.sources_scanned = max(r.sources_scanned for r in reports)
        result.max_violation = max(r.max_violation for r in reports)
        result.min_gap = min(r.min_gap for r in reports)

    if settings.get("log_oracle", True):
        settings.log_info(
            "Oracle",
            f"verify {theorem_id} finished in {time.perf_counter() - started:.2f}s",
            {"pass": result.passed, "seed": seed, "budget": budget},
        )
    return result
