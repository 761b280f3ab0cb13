"""Entropy query: H_a(P) of a mass list, or a conditional quantity of a source file."""

from typing import List, Optional

from renyisharp.core.errors import DomainError
from renyisharp.measures.conditional import (
    CondSource,
    bhattacharyya,
    cond_renyi,
    expected_norm,
    min_error,
)
from renyisharp.measures.simplex import ProbVec, lr_norm, renyi_entropy

from ..command import COMMANDS, QueryCommand
from ..params import opt_masses, opt_order

QUANTITIES = ("entropy", "norm", "pe", "z")


@COMMANDS.entry("entropy")
class EntropyCommand(QueryCommand):
    """Compute an entropy-type quantity.

    Parameters:
        masses (list|str): Distribution, e.g. ``0.5,0.5``
        source (str): Path to a source CSV (rows ``P_Y(y), P(x|y)...``)
        order (str): ``0``, ``1``, ``inf`` or a positive real
        quantity (str): entropy (default), norm, pe or z
    """

    def __init__(
        self,
        order: Optional[str] = None,
        masses: Optional[List[float]] = None,
        source: Optional[str] = None,
        quantity: str = "entropy",
    ):
        if (masses is None) == (source is None):
            raise DomainError("give exactly one of 'masses' or 'source'")
        quantity = quantity.lower()
        if quantity not in QUANTITIES:
            raise DomainError(f"unknown quantity {quantity!r}; use one of {', '.join(QUANTITIES)}")
        if quantity in ("entropy", "norm") and order is None:
            raise DomainError(f"'order' parameter is required for {quantity}")
        self.order = order
        self.masses = masses
        self.source = source
        self.quantity = quantity

    def execute(self, context) -> dict:
        if self.masses is not None:
            value = self._unconditional(ProbVec(self.masses))
        else:
            value = self._conditional(CondSource.from_csv(self.source))
        context.log(f"{self.quantity} = {value!r}")
        return {"quantity": self.quantity, "order": self.order, "value": value}

    def _unconditional(self, P: ProbVec) -> float:
        if self.quantity == "entropy":
            return renyi_entropy(P, self.order)
        if self.quantity == "norm":
            return lr_norm(P, self.order)
        return self._conditional(CondSource.unconditional(P))

    def _conditional(self, src: CondSource) -> float:
        if self.quantity == "entropy":
            return cond_renyi(src, self.order)
        if self.quantity == "norm":
            return expected_norm(src, self.order)
        if self.quantity == "pe":
            return min_error(src)
        return bhattacharyya(src)

    @classmethod
    def from_dict(cls, data: dict):
        return cls(
            order=opt_order(data, "order"),
            masses=opt_masses(data, "masses"),
            source=data.get("source") or None,
            quantity=str(data.get("quantity", "entropy")),
        )

    def to_dict(self) -> dict:
        out = {"command": "entropy", "quantity": self.quantity}
        if self.order is not None:
            out["order"] = self.order
        if self.masses is not None:
            out["masses"] = list(self.masses)
        if self.source is not None:
            out["source"] = self.source
        return out
