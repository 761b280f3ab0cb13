"""Brute-force verification of the bounds over grid, random and witness sources."""

from .batch import SourceBatch, grid_batch
from .checks import CHECKS, BoundCheck, Sample, Witness
from .sources import (
    grid_count,
    grid_source_batch,
    grid_sources,
    random_sources,
    simplex_grid,
    verify_estimator_pe,
)
from .verify import ALL_CHECKS, VerificationReport, collect_batches, run_check, verify_bound

__all__ = [
    "ALL_CHECKS",
    "CHECKS",
    "BoundCheck",
    "Sample",
    "SourceBatch",
    "VerificationReport",
    "Witness",
    "collect_batches",
    "grid_batch",
    "grid_count",
    "grid_source_batch",
    "grid_sources",
    "random_sources",
    "run_check",
    "simplex_grid",
    "verify_bound",
    "verify_estimator_pe",
]
