# src/renyisharp/app_info.py
# Owns app metadata + standard per-user paths.

from __future__ import annotations

from pathlib import Path

from platformdirs import PlatformDirs

# ---- App identity ---------------------------------------------------------
APP_ORG = "renyisharp"
APP_NAME = "renyi-sharp"
APP_ID = f"{APP_ORG}.{APP_NAME}"

# Environment variable capping worker threads (0 = auto)
THREADS_ENV = "RENYI_SHARP_THREADS"

try:
    from . import __version__ as APP_VERSION
except Exception:
    APP_VERSION = "0.0.0-dev"

_DIRS = PlatformDirs(appname=APP_NAME, appauthor=False)


# ---- Standard locations (cross-platform) ----------------------------------
def app_dir(kind: str, create: bool = False) -> Path:
    """
    Returns the per-user directory for the app, e.g. on Linux
    - config: ~/.config/renyi-sharp
    - log:    ~/.local/state/renyi-sharp/log
    """
    paths = {
        "config": _DIRS.user_config_path,
        "log": _DIRS.user_log_path,
    }
    if kind not in paths:
        raise ValueError(f"Unknown directory kind: {kind}")
    path = Path(paths[kind])
    if create:
        path.mkdir(parents=True, exist_ok=True)
    return path


# Commonly used paths (created lazily by their writers)
SETTINGS_PATH = app_dir("config") / "settings.json"
LOG_DIR = app_dir("log")
