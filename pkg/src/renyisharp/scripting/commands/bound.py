"""Bound query: any of the sharp bounds, on raw values or on a source file."""

from typing import Dict, List, Optional

from renyisharp.bounds.theorems import (
    LOWER,
    UPPER,
    BoundResult,
    alpha_upper_from_infinity,
    cond_bound_binary,
    cond_bound_st,
    cond_bound_uv,
    cond_bound_vs_infinity,
    fano_lower,
    fano_upper,
    feasible_bounds,
    h2_vs_hhalf,
    infinity_lower_from_alpha,
    pe_from_z,
    pe_lower,
    pe_upper,
    uncond_bounds,
    uncond_norm_bounds,
    z_from_pe,
)
from renyisharp.core.errors import DomainError
from renyisharp.measures.conditional import CondSource, cond_renyi
from renyisharp.measures.simplex import ProbVec

from ..command import COMMANDS, QueryCommand
from ..params import opt_float, opt_int, opt_masses, opt_order, require

THEOREMS: Dict[str, str] = {
    "uncond": "H_b(P) given H_a(P) (masses)",
    "norm": "‖P‖_b given ‖P‖_a (masses)",
    "alpha-inf": "upper on H_a(X|Y) given H_inf(X|Y) = value",
    "inf-alpha": "lower on H_inf(X|Y) given H_a(X|Y) = value",
    "binary": "H_b(X|Y) given H_a(X|Y) = value, binary X",
    "st": "H_b(X|Y) given H_a(X|Y) via (S, T), needs n >= 3",
    "uv": "H_b(X|Y) given H_a(X|Y) via (U, V)",
    "fano": "lower and upper on H_a(X|Y) given P_e = eps",
    "fano-lower": "lower on H_a given P_e = eps",
    "fano-upper": "upper on H_a given P_e = eps, needs n",
    "pe": "P_e(X|Y) given H_a(X|Y) = value",
    "z-pe": "Z(X|Y) given P_e(X|Y) = eps",
    "pe-z": "P_e(X|Y) given Z(X|Y) = z",
    "h2-hhalf": "H_2(X|Y) given H_1/2(X|Y) = value",
    "feasible": "best pair on H_b(X|Y) given H_a(X|Y) = value",
}


def evaluate_bound(
    theorem: str,
    a: Optional[str] = None,
    b: Optional[str] = None,
    value: Optional[float] = None,
    n: Optional[int] = None,
    eps: Optional[float] = None,
    z: Optional[float] = None,
    masses: Optional[List[float]] = None,
    source: Optional[CondSource] = None,
    kind: str = "conditional",
) -> List[BoundResult]:
    """Dispatch one bound query; returns the requested bound(s)."""
    t = theorem.lower().replace("_", "-")

    if t in ("uncond", "norm"):
        P = ProbVec(require(masses, "masses", t))
        fn = uncond_bounds if t == "uncond" else uncond_norm_bounds
        return list(fn(P, require(a, "a", t), require(b, "b", t)))

    if t in ("alpha-inf", "inf-alpha"):
        a = require(a, "a", t)
        if source is not None:
            upper, lower = cond_bound_vs_infinity(a, source=source)
            return [upper if t == "alpha-inf" else lower]
        n = require(n, "n", t)
        value = require(value, "value", t)
        if t == "alpha-inf":
            return [alpha_upper_from_infinity(n, value, a)]
        return [infinity_lower_from_alpha(n, value, a)]

    if t == "binary":
        a, b = require(a, "a", t), require(b, "b", t)
        if source is not None:
            value = cond_renyi(source, a)
        return [cond_bound_binary(require(value, "value", t), a, b)]

    if t == "st":
        return [cond_bound_st(require(a, "a", t), require(b, "b", t), source=source, n=n, value=value)]

    if t == "uv":
        return [cond_bound_uv(require(a, "a", t), require(b, "b", t), source=source, value=value)]

    if t in ("fano", "fano-lower", "fano-upper"):
        a, eps = require(a, "a", t), require(eps, "eps", t)
        out = []
        if t != "fano-upper":
            out.append(BoundResult(LOWER, fano_lower(kind, a, eps), f"fano-{kind}"))
        if t != "fano-lower":
            out.append(BoundResult(UPPER, fano_upper(a, eps, require(n, "n", t)), f"fano-{kind}"))
        return out

    if t == "pe":
        a = require(a, "a", t)
        if source is not None:
            value = cond_renyi(source, a)
            n = n or source.support_x()
        value = require(value, "value", t)
        out = [BoundResult(UPPER, pe_upper(a, value), "pe")]
        if n is not None:
            out.insert(0, BoundResult(LOWER, pe_lower(a, value, n), "pe"))
        return out

    if t == "z-pe":
        lo, up = z_from_pe(require(eps, "eps", t), require(n, "n", t))
        return [BoundResult(LOWER, lo, "z-pe"), BoundResult(UPPER, up, "z-pe")]

    if t == "pe-z":
        lo, up = pe_from_z(require(z, "z", t), require(n, "n", t))
        return [BoundResult(LOWER, lo, "pe-z"), BoundResult(UPPER, up, "pe-z")]

    if t == "h2-hhalf":
        if source is not None:
            value = cond_renyi(source, 0.5)
            n = n or source.support_x()
        lower, upper = h2_vs_hhalf(require(value, "value", t), n)
        out = [BoundResult(UPPER, upper, "h2-hhalf")]
        if lower is not None:
            out.insert(0, BoundResult(LOWER, lower, "h2-hhalf"))
        return out

    if t == "feasible":
        a, b = require(a, "a", t), require(b, "b", t)
        if source is not None:
            value = cond_renyi(source, a)
            n = n or source.support_x()
        return list(feasible_bounds(require(n, "n", t), a, b, require(value, "value", t)))

    raise DomainError(f"unknown theorem {theorem!r}; use one of {', '.join(THEOREMS)}")


@COMMANDS.entry("bound")
class BoundCommand(QueryCommand):
    """Evaluate one bound.

    Parameters:
        theorem (str): One of ``THEOREMS``
        a, b (str): Orders
        value, eps, z (float): The fixed quantity
        n (int): X alphabet size
        masses (list|str): Distribution for the unconditional bounds
        source (str): Source CSV path (replaces value/n where supported)
        kind (str): conditional or unconditional (Fano bounds)
    """

    FIELDS = ("a", "b", "value", "n", "eps", "z", "masses", "source", "kind")

    def __init__(self, theorem: str, **params):
        self.theorem = theorem
        self.params = {k: v for k, v in params.items() if v is not None}
        unknown = set(self.params) - set(self.FIELDS)
        if unknown:
            raise DomainError(f"unknown bound parameters: {', '.join(sorted(unknown))}")

    def execute(self, context) -> dict:
        params = dict(self.params)
        if "source" in params:
            params["source"] = CondSource.from_csv(params["source"])
        results = evaluate_bound(self.theorem, **params)
        for r in results:
            context.log(f"{self.theorem}: {r.kind} = {r.value!r} ({r.theorem_id})")
        return {"theorem": self.theorem, "bounds": [r.to_dict() for r in results]}

    @classmethod
    def from_dict(cls, data: dict):
        theorem = data.get("theorem")
        if not theorem:
            raise ValueError("'theorem' parameter is required")
        return cls(
            str(theorem),
            a=opt_order(data, "a"),
            b=opt_order(data, "b"),
            value=opt_float(data, "value"),
            n=opt_int(data, "n"),
            eps=opt_float(data, "eps"),
            z=opt_float(data, "z"),
            masses=opt_masses(data, "masses"),
            source=data.get("source") or None,
            kind=data.get("kind") or None,
        )

    def to_dict(self) -> dict:
        return {"command": "bound", "theorem": self.theorem, **self.params}
