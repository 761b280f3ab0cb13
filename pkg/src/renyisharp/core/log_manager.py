from __future__ import annotations

from datetime import datetime
from pathlib import Path


class LogManager:
    def __init__(self, log_dir: str | Path, app_name: str = "renyisharp"):
        self.log_dir = Path(log_dir)
        self.app_name = app_name
        self.log_dir.mkdir(parents=True, exist_ok=True)

    def get_log_file_path(self) -> Path:
        """Log file path with format yyyyMMdd_{app}.log"""
        date_str = datetime.now().strftime("%Y%m%d")
        return self.log_dir / f"{date_str}_{self.app_name}.log"

    def _write_log(self, level: str, message: str) -> None:
        """Append a timestamped line to the daily log file"""
        timestamp = datetime.now().strftime("%H%M%S.%f")[:-2]  # hhmmss.ffff
        log_entry = f"{timestamp} {level} {message}\n"

        try:
            with open(self.get_log_file_path(), "a", encoding="utf-8") as f:
                f.write(log_entry)
        except Exception:
            pass  # never let logging take down a computation

    @staticmethod
    def _format(where: str, message: str, meta: dict | None) -> str:
        log_msg = f"[{where}] {message}"
        if meta:
            log_msg += f" | {meta}"
        return log_msg

    def log_info(self, where: str, message: str, meta: dict | None = None) -> None:
        self._write_log("INFO", self._format(where, message, meta))

    def log_error(self, where: str, message: str, meta: dict | None = None) -> None:
        self._write_log("ERROR", self._format(where, message, meta))
