"""Execution context - passed to commands, provides utilities."""

from datetime import datetime


class ExecutionContext:
    """Context for command execution.

    Provides:
    - Access to settings
    - Logging functionality
    - Collected results and execution state
    """

    def __init__(self, settings_manager=None):
        self.settings_manager = settings_manager

        # Execution control
        self.stop_on_error = False

        # Results of executed commands, in order
        self.results = []

        # Logging
        self.logs = []
        self.log_to_console = False

    def log(self, message: str, level: str = "INFO"):
        """Log a message.

        Args:
            message: Message to log
            level: Log level (INFO, WARNING, ERROR)
        """
        timestamp = datetime.now().strftime("%H:%M:%S")
        log_entry = f"[{timestamp}] [{level}] {message}"
        self.logs.append(log_entry)

        if self.log_to_console:
            print(log_entry)

        sm = self.settings_manager
        if sm is not None and sm.get("log_commands", True):
            if level == "ERROR":
                sm.log_error("Script", message)
            else:
                sm.log_info("Script", message)

    def add_result(self, result: dict):
        self.results.append(result)

    def get_logs(self) -> list:
        return self.logs.copy()

    def clear_logs(self):
        self.logs.clear()

    def __repr__(self):
        return (
            f"ExecutionContext("
            f"settings={self.settings_manager is not None}, "
            f"results={len(self.results)})"
        )
