"""Verify query: run the brute-force oracle for one check or for all of them."""

from typing import Optional

from renyisharp.core.settings import SettingsManager
from renyisharp.oracle.checks import CHECKS
from renyisharp.oracle.verify import ALL_CHECKS, verify_bound

from ..command import COMMANDS, QueryCommand
from ..params import opt_int, opt_seed


@COMMANDS.entry("verify")
class VerifyCommand(QueryCommand):
    """Scan grid and random sources against a check.

    Parameters:
        theorem (str): Check id (see ``CHECKS.names()``) or ``all``
        seed (int|str): Random seed, decimal or 0x-hex (default: settings)
        budget (int): Random sources (default: settings ``random_budget``)
        threads (int): Worker threads (default: settings/env)

    A failed verification raises, so a script run reports it as a failed command.
    """

    def __init__(
        self,
        theorem: str = ALL_CHECKS,
        seed: Optional[int] = None,
        budget: Optional[int] = None,
        threads: Optional[int] = None,
    ):
        if theorem != ALL_CHECKS and theorem not in CHECKS:
            raise ValueError(
                f"Unknown check: {theorem}; available: {', '.join(CHECKS)}, all"
            )
        self.theorem = theorem
        self.seed = seed
        self.budget = budget
        self.threads = threads

    def run(self, context):
        """The VerificationReport, without raising on failure."""
        settings = context.settings_manager or SettingsManager()
        report = verify_bound(
            self.theorem,
            settings=settings,
            seed=self.seed,
            budget=self.budget,
            threads=self.threads,
        )
        context.log(
            f"verify {self.theorem}: {'pass' if report.passed else 'FAIL'} "
            f"({report.sources_scanned} sources, max violation {report.max_violation:.3e})",
            level="INFO" if report.passed else "ERROR",
        )
        return report

    def execute(self, context) -> dict:
        report = self.run(context)
        if not report.passed:
            raise RuntimeError(f"verification of {self.theorem} failed")
        return report.to_dict()

    @classmethod
    def from_dict(cls, data: dict):
        return cls(
            theorem=str(data.get("theorem") or ALL_CHECKS),
            seed=opt_seed(data, "seed"),
            budget=opt_int(data, "budget"),
            threads=opt_int(data, "threads"),
        )

    def to_dict(self) -> dict:
        out = {"command": "verify", "theorem": self.theorem}
        for key in ("seed", "budget", "threads"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out
