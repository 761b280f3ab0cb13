"""Script executor - orchestrates command execution."""

import json
from pathlib import Path
from typing import Callable, Optional

from .context import ExecutionContext
from .command import command_from_dict
from .simple_parser import parse_simple_script


class ScriptExecutor:
    """Executes a sequence of queries from a script.

    Features:
    - Load scripts from JSON or the simple line format
    - Execute commands sequentially, collecting one result per command
    - Handle errors (stop or continue)
    """

    def __init__(self, context: Optional[ExecutionContext] = None):
        self.context = context or ExecutionContext()
        self.commands = []
        self.errors = []

    def load_from_json(self, json_data: dict):
        """Load script from JSON data.

        Args:
            json_data: Dictionary with 'commands' list

        Raises:
            ValueError: If JSON format is invalid
        """
        self.commands = []
        self.errors = []

        if not isinstance(json_data, dict) or "commands" not in json_data:
            raise ValueError("JSON must contain 'commands' key")

        for i, cmd_data in enumerate(json_data["commands"]):
            try:
                cmd = command_from_dict(cmd_data)
                self.commands.append(cmd)

            except Exception as e:
                error = f"Error loading command {i}: {e}"
                self.errors.append(error)
                self.context.log(error, level="ERROR")

    def load_from_file(self, filepath: str):
        """Load script from file (auto-detects format).

        Supports:
        - .json files (JSON format)
        - anything else (simple text format, one query per line)

        Raises:
            FileNotFoundError: If file not found
            ValueError: If format is invalid
        """
        file_path = Path(filepath)
        try:
            text = file_path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise FileNotFoundError(f"Script file not found: {filepath}")

        if file_path.suffix.lower() == ".json":
            try:
                json_data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ValueError(f"Invalid JSON in {filepath}: {e}")
        else:
            try:
                json_data = parse_simple_script(text)
            except ValueError as e:
                raise ValueError(f"Invalid script format in {filepath}: {e}")

        self.load_from_json(json_data)
        self.context.log(f"Loaded script from: {filepath}")

    def save_to_file(self, filepath: str):
        """Save current script to JSON file."""
        script_data = {
            "version": "1.0",
            "commands": [cmd.to_dict() for cmd in self.commands],
        }
        Path(filepath).write_text(json.dumps(script_data, indent=2), encoding="utf-8")
        self.context.log(f"Saved script to: {filepath}")

    def execute(self, on_progress: Callable = None) -> bool:
        """Execute all commands sequentially.

        Args:
            on_progress: Callback(current_index, total, command_description)

        Returns:
            True if all commands succeeded, False if errors occurred
        """
        self.errors = []
        self.context.results = []

        self.context.log(f"Starting script execution ({len(self.commands)} commands)")

        success_count = 0
        error_count = 0

        for i, cmd in enumerate(self.commands):
            try:
                if on_progress:
                    on_progress(i, len(self.commands), str(cmd))

                self.context.log(f"Executing [{i+1}/{len(self.commands)}]: {cmd}")
                result = cmd.execute(self.context)
                self.context.add_result({"index": i, "ok": True, **cmd.to_dict(), "result": result})
                success_count += 1

            except Exception as e:
                error_count += 1
                self.errors.append((i, cmd, str(e)))
                self.context.add_result({"index": i, "ok": False, **cmd.to_dict(), "error": str(e)})
                self.context.log(f"Command failed: {e}", level="ERROR")

                if self.context.stop_on_error:
                    self.context.log("Stopping on error")
                    break

        self.context.log(
            f"Script execution complete: {success_count} succeeded, "
            f"{error_count} failed"
        )

        return error_count == 0

    def get_errors(self) -> list:
        """List of (index, command, error_message) tuples from the last run."""
        return self.errors.copy()
