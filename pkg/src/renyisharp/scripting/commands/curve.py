"""Curve query: sample a feasible-region boundary and optionally write it out."""

from pathlib import Path
from typing import Optional

from renyisharp.bounds.curves import sample_curve
from renyisharp.core.errors import DomainError

from ..command import COMMANDS, QueryCommand
from ..params import opt_int, opt_order

FORMATS = ("csv", "json")


@COMMANDS.entry("curve")
class CurveCommand(QueryCommand):
    """Sample a boundary curve.

    Parameters:
        region (str): H_vs_Pe, Pe_vs_H, Z_vs_Pe, H2_vs_Hhalf or Hb_vs_Ha
        n (int): X alphabet size
        points (int): Grid size (default: settings ``curve_points``)
        a, b (str): Orders where the region takes them
        kind (str): conditional or unconditional (H_vs_Pe)
        out (str): Output path; the curve is returned inline when omitted
        format (str): csv (default) or json
    """

    def __init__(
        self,
        region: str,
        n: int,
        points: Optional[int] = None,
        a: Optional[str] = None,
        b: Optional[str] = None,
        kind: str = "conditional",
        out: Optional[str] = None,
        fmt: str = "csv",
    ):
        fmt = fmt.lower()
        if fmt not in FORMATS:
            raise DomainError(f"unknown curve format {fmt!r}; use csv or json")
        self.region = region
        self.n = n
        self.points = points
        self.a = a
        self.b = b
        self.kind = kind
        self.out = out
        self.fmt = fmt

    def render(self, context):
        """The sampled curve and its text in the chosen format."""
        points = self.points
        threads = 1
        sm = context.settings_manager
        if sm is not None:
            points = points or int(sm.get("curve_points", 101))
            threads = sm.thread_count()
        curve = sample_curve(
            self.region,
            self.n,
            points=points or 101,
            a=self.a,
            b=self.b,
            kind=self.kind,
            threads=threads,
        )
        text = curve.to_csv_text() if self.fmt == "csv" else curve.to_json() + "\n"
        return curve, text

    def execute(self, context) -> dict:
        curve, text = self.render(context)
        result = {"region": self.region, "n": self.n, "points": len(curve.points)}
        if self.out:
            path = Path(self.out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            context.log(f"Wrote {len(curve.points)} points to: {path}")
            result["out"] = str(path)
        else:
            result["curve"] = curve.to_dict()
        bad = curve.violations()
        if bad:
            context.log(f"lower exceeds upper at {len(bad)} points", level="WARNING")
            result["violations"] = bad
        return result

    @classmethod
    def from_dict(cls, data: dict):
        if not data.get("region"):
            raise ValueError("'region' parameter is required")
        n = opt_int(data, "n")
        if n is None:
            raise ValueError("'n' parameter is required")
        return cls(
            region=str(data["region"]),
            n=n,
            points=opt_int(data, "points"),
            a=opt_order(data, "a"),
            b=opt_order(data, "b"),
            kind=str(data.get("kind") or "conditional"),
            out=data.get("out") or None,
            fmt=str(data.get("format") or "csv"),
        )

    def to_dict(self) -> dict:
        out = {"command": "curve", "region": self.region, "n": self.n, "format": self.fmt}
        for key in ("points", "a", "b", "out"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.kind != "conditional":
            out["kind"] = self.kind
        return out
