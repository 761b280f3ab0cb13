"""Simple script format parser.

Converts the line format to the JSON form the executor loads.

Simple Format Examples:
    entropy masses=0.5,0.5 order=2
    bound theorem=uv a=inf b=1 value=0.9
    curve region=h2-vs-hhalf n=8 points=101 out=r.csv
    verify theorem=binary budget=200
"""

from typing import Dict, List, Optional, Tuple

KNOWN_COMMANDS = ("entropy", "bound", "curve", "verify")


class SimpleScriptParser:
    """Parse simple script format and convert to JSON."""

    def __init__(self):
        self.errors = []

    def parse(self, script_text: str) -> Dict:
        """Parse simple script text and return JSON representation.

        Raises:
            ValueError: If script contains syntax errors (all lines are reported)
        """
        self.errors = []
        commands = []

        for line_num, line in enumerate(script_text.strip().split("\n"), 1):
            if "#" in line:
                line = line.split("#")[0]
            line = line.strip()
            if not line:
                continue

            try:
                cmd = self._parse_line(line)
                if cmd:
                    commands.append(cmd)
            except ValueError as e:
                self.errors.append(f"Line {line_num}: {e}")

        if self.errors:
            raise ValueError("\n".join(self.errors))

        return {"version": "1.0", "commands": commands}

    def _parse_line(self, line: str) -> Optional[Dict]:
        parts = self._split_command(line)
        if not parts:
            return None

        name = parts[0].lower()
        if name not in KNOWN_COMMANDS:
            raise ValueError(f"Unknown command: {name}")

        cmd = {"command": name}
        for part in parts[1:]:
            key, value = self._split_pair(part)
            cmd[key] = value
        return cmd

    @staticmethod
    def _split_pair(part: str) -> Tuple[str, str]:
        if "=" not in part:
            raise ValueError(f"expected key=value, got: {part}")
        key, value = part.split("=", 1)
        key = key.strip().lower().replace("-", "_")
        if not key:
            raise ValueError(f"missing key in: {part}")
        return key, value

    def _split_command(self, line: str) -> List[str]:
        """Split command line, respecting quoted strings."""
        parts = []
        current = ""
        in_quotes = False

        for char in line:
            if char == '"':
                in_quotes = not in_quotes
            elif char.isspace() and not in_quotes:
                if current:
                    parts.append(current)
                    current = ""
            else:
                current += char

        if in_quotes:
            raise ValueError("unterminated quote")
        if current:
            parts.append(current)

        return parts


def parse_simple_script(text: str) -> Dict:
    """Parse simple script text into a JSON-compatible dict.

    Raises:
        ValueError: If script is invalid
    """
    return SimpleScriptParser().parse(text)
