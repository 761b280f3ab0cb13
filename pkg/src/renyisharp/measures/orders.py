"""Order algebra: entropy/norm orders, the θ and γ maps and the q-logarithm."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Optional, Union

from renyisharp.core.errors import DomainError

UNIT_ORDER_GUARD = 1e-12


class OrderTag(enum.Enum):
    ZERO = "zero"
    SHANNON = "shannon"
    INFINITY = "infinity"
    FINITE = "finite"


@functools.total_ordering
@dataclass(frozen=True)
class Order:
    """An order α ∈ [0, ∞] with 0, 1 and ∞ kept as distinct tags.

    Use the constructors rather than the raw dataclass:

    >>> Order.finite(0.5).value
    0.5
    >>> Order.of(1) is SHANNON
    True
    """

    tag: OrderTag
    value: Optional[float] = None

    def __post_init__(self) -> None:
        if self.tag is OrderTag.FINITE:
            v = self.value
            if v is None or not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"finite order must be a positive real, got {v!r}")
            if abs(v - 1.0) <= UNIT_ORDER_GUARD:
                raise DomainError(f"order {v!r} is too close to 1; use the Shannon order")
        elif self.value is not None:
            raise DomainError(f"{self.tag.value} order carries no value")

    @classmethod
    def finite(cls, value: float) -> "Order":
        return cls(OrderTag.FINITE, float(value))

    @classmethod
    def of(cls, x: Union["Order", float, int, str]) -> "Order":
        """Coerce a number or text into an Order (0, 1 and ∞ map to their tags)."""
        if isinstance(x, Order):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        x = float(x)
        if x == 0.0:
            return ZERO
        if x == 1.0:
            return SHANNON
        if math.isinf(x) and x > 0:
            return INFINITY
        return cls.finite(x)

    @classmethod
    def parse(cls, text: str) -> "Order":
        """Parse ``0``, ``1``, ``inf``/``∞`` or a positive real."""
        token = text.strip().lower()
        if token in ("inf", "infinity", "∞", "+inf"):
            return INFINITY
        if token in ("shannon",):
            return SHANNON
        try:
            x = float(token)
        except ValueError as e:
            raise DomainError(f"cannot parse order from {text!r}") from e
        if math.isnan(x) or x < 0:
            raise DomainError(f"order must be non-negative, got {text!r}")
        return cls.of(x)

    # ---- predicates ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.tag is OrderTag.ZERO

    @property
    def is_shannon(self) -> bool:
        return self.tag is OrderTag.SHANNON

    @property
    def is_infinity(self) -> bool:
        return self.tag is OrderTag.INFINITY

    @property
    def is_finite(self) -> bool:
        return self.tag is OrderTag.FINITE

    def as_float(self) -> float:
        if self.tag is OrderTag.ZERO:
            return 0.0
        if self.tag is OrderTag.SHANNON:
            return 1.0
        if self.tag is OrderTag.INFINITY:
            return math.inf
        return self.value  # type: ignore[return-value]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Order):
            return NotImplemented
        return self.as_float() < other.as_float()

    def __str__(self) -> str:
        if self.tag is OrderTag.INFINITY:
            return "inf"
        if self.tag is OrderTag.FINITE:
            return repr(self.value)
        return "0" if self.is_zero else "1"


ZERO = Order(OrderTag.ZERO)
SHANNON = Order(OrderTag.SHANNON)
INFINITY = Order(OrderTag.INFINITY)
HALF = Order.finite(0.5)
TWO = Order.finite(2.0)

OrderLike = Union[Order, float, int, str]


def theta(r: OrderLike) -> float:
    """θ(r) = (1 − r)/r with θ(1) = 0 and θ(∞) = −1."""
    r = Order.of(r)
    if r.is_zero:
        raise DomainError("theta diverges at order 0")
    if r.is_shannon:
        return 0.0
    if r.is_infinity:
        return -1.0
    return (1.0 - r.value) / r.value


def gamma(r: OrderLike, s: OrderLike) -> float:
    """γ(r, s) = lim (1 − a)/(1 − b) as (a, b) → (r, s), with γ(∞, ∞) = 1.

    When s is the Shannon order and r is not, the limit is taken with b between
    1 and r, which gives +∞.
    """
    r, s = Order.of(r), Order.of(s)
    if r == s:
        return 1.0
    if s.is_shannon:
        return math.inf
    if s.is_infinity:
        return 0.0
    if r.is_infinity:
        return -math.inf if s.as_float() < 1.0 else math.inf
    return (1.0 - r.as_float()) / (1.0 - s.as_float())


def q_log(q: float, x: float) -> float:
    """The q-logarithm: ln x at q = 1, else (x^{1−q} − 1)/(1 − q)."""
    if not x > 0.0:
        raise DomainError(f"q_log needs x > 0, got {x!r}")
    if q == 1.0:
        return math.log(x)
    k = 1.0 - q
    return math.expm1(k * math.log(x)) / k
