from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

# Single source of truth for app identity & paths
from renyisharp.app_info import LOG_DIR, SETTINGS_PATH, THREADS_ENV

try:
    from .log_manager import LogManager
except Exception:
    LogManager = None  # type: ignore


class SettingsManager:
    """
    Verification and numeric settings persisted as JSON.

    The file is merged over ``default_settings`` on load, so a partial or
    missing file is always valid.
    """

    def __init__(
        self,
        settings_path: Optional[Path | str] = None,
        log_dir: Optional[Path | str] = None,
    ) -> None:
        self.settings_path: Path = Path(settings_path) if settings_path else SETTINGS_PATH
        self.log_dir: Path = Path(log_dir) if log_dir else LOG_DIR

        self.default_settings: Dict[str, Any] = {
            "logging_enabled": True,
            "log_oracle": True,
            "log_commands": True,

            "seed": 0x5EED,
            "threads": 0,                 # 0 = auto; RENYI_SHARP_THREADS wins when set

            "violation_tol": 1e-9,
            "sharp_tol_grid": 1e-3,
            "sharp_tol_witness": 1e-8,
            "identity_tol": 1e-12,

            "random_budget": 10000,
            "random_max_n": 6,
            "random_max_k": 6,

            "enumeration_cap": 200000,
            "estimator_cap": 1000000,

            # [n, k, step]; each entry must stay under enumeration_cap
            "grid_specs": [
                [2, 1, 0.01],
                [2, 2, 0.05],
                [2, 3, 0.05],
                [3, 1, 0.05],
                [3, 2, 0.1],
                [3, 3, 0.25],
                [4, 1, 0.05],
                [4, 2, 0.2],
                [4, 3, 0.5],
            ],
            "estimator_grid_specs": [
                [2, 2, 0.1],
                [2, 4, 0.25],
                [3, 3, 0.25],
                [4, 2, 0.25],
                [4, 4, 0.5],
            ],
            "order_pairs": [
                ["0.5", "2"],
                ["2", "0.5"],
                ["0.5", "inf"],
                ["inf", "2"],
                ["3", "0.5"],
                ["inf", "1"],
            ],
            "curve_points": 101,
        }

        self.settings: Dict[str, Any] = self._load_settings()

        # ----- Logging -----------------------------------------------------
        self.log_manager = None
        if self.settings.get("logging_enabled", True) and LogManager is not None:
            try:
                self.log_manager = LogManager(self.log_dir, "renyisharp")
            except Exception:
                self.log_manager = None  # read-only home etc.

    # ----------------------------------------------------------------------
    # Public getters
    def get(self, key: str, default: Any = None) -> Any:
        return self.settings.get(key, default)

    def set(self, key: str, value: Any) -> None:
        self.settings[key] = value

    def thread_count(self) -> int:
        """Worker threads for fan-out; 0 in settings or env means one per CPU."""
        raw = os.environ.get(THREADS_ENV)
        count = self.settings.get("threads", 0)
        if raw is not None and raw.strip():
            try:
                count = int(raw)
            except ValueError:
                self.log_error("SettingsManager", f"Ignoring non-integer {THREADS_ENV}={raw!r}")
        count = int(count or 0)
        if count <= 0:
            count = os.cpu_count() or 1
        return count

    def order_pairs(self) -> List[Tuple[Any, Any]]:
        from renyisharp.measures.orders import Order

        return [(Order.parse(str(a)), Order.parse(str(b))) for a, b in self.settings.get("order_pairs", [])]

    # ----------------------------------------------------------------------
    # Logging shims (calls are safe even when LogManager is None)
    def log_info(self, where: str, message: str, meta: dict | None = None) -> None:
        if self.log_manager:
            try:
                self.log_manager.log_info(where, message, meta or {})
            except Exception:
                pass

    def log_error(self, where: str, message: str, meta: dict | None = None) -> None:
        if self.log_manager:
            try:
                self.log_manager.log_error(where, message, meta or {})
            except Exception:
                pass

    def get_log_file_path(self) -> Path | None:
        if self.log_manager:
            return self.log_manager.get_log_file_path()
        return None

    # ----------------------------------------------------------------------
    # Settings IO
    def _load_settings(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {}
        if self.settings_path.exists():
            try:
                data = json.loads(self.settings_path.read_text(encoding="utf-8"))
            except Exception:
                data = {}
            if not isinstance(data, dict):
                data = {}

        # shallow merge + one-level nested dicts
        merged = dict(self.default_settings)
        for k, v in data.items():
            if isinstance(v, dict) and isinstance(merged.get(k), dict):
                merged[k] = {**merged[k], **v}
            else:
                merged[k] = v
        return merged

    def save_settings(self) -> bool:
        """Persist settings atomically; verify; return True on success."""
        try:
            self.settings_path.parent.mkdir(parents=True, exist_ok=True)
            tmp_path = self.settings_path.with_suffix(".tmp")

            with tmp_path.open("w", encoding="utf-8") as f:
                json.dump(self.settings, f, indent=2)
                try:
                    f.flush()
                    os.fsync(f.fileno())
                except Exception:
                    pass  # best effort

            tmp_path.replace(self.settings_path)

            try:
                loaded = json.loads(self.settings_path.read_text(encoding="utf-8"))
                if not isinstance(loaded, dict):
                    self.log_error("SettingsManager", "Settings saved but verification failed: invalid JSON structure")
                    return False
            except Exception as e:
                self.log_error("SettingsManager", f"Settings saved but verify failed: {e}")
                return False

            self.log_info("SettingsManager", f"Saved settings to {self.settings_path}")
            return True

        except Exception as e:
            self.log_error("SettingsManager", f"Failed to save settings to file: {e}")
            return False
