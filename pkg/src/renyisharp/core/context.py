# renyisharp/core/context.py

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from renyisharp.core.settings import SettingsManager


@dataclass
class AppContext:
    """
    Lightweight application context.

    Side-effect free: it just stores references to shared services.
    """

    settings_manager: Optional[SettingsManager] = None

    @classmethod
    def create(
        cls,
        settings_path: Path | str | None = None,
        log_dir: Path | str | None = None,
    ) -> "AppContext":
        """Create a fresh SettingsManager and wire it into the context."""
        return cls(settings_manager=SettingsManager(settings_path=settings_path, log_dir=log_dir))
