from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

from regime_market.core.exceptions import InvalidParentOrderError
from regime_market.schemas.models.order_schema import Fill, Side


class Strategy(str, Enum):
    FULL_MO = "full_MO"
    FULL_LO = "full_LO"
    REGIME_AWARE_0 = "regime_aware_0"
    REGIME_AWARE_1 = "regime_aware_1"


@dataclass(frozen=True)
class ParentOrder:
    """
    Parent order executed on a TWAP schedule.

    Q shares before T seconds, one child every tau seconds; k only matters
    for regime_aware_1, which schedules on a period of k * tau.
    """
    Q: int
    T: float
    tau: float
    k: int = 1
    side: Side = Side.BUY

    def __post_init__(self):
        if self.Q <= 0:
            raise InvalidParentOrderError(f"Q must be positive, got {self.Q}")
        if not 0 < self.tau < self.T:
            raise InvalidParentOrderError(f"need 0 < tau < T, got tau={self.tau}, T={self.T}")
        if self.k < 1:
            raise InvalidParentOrderError(f"k must be >= 1, got {self.k}")
        if self.k * self.tau >= self.T:
            raise InvalidParentOrderError(
                f"aggregated period k * tau must be < T, got k={self.k}, tau={self.tau}, T={self.T}"
            )
        if self.side is not Side.BUY:
            raise InvalidParentOrderError("only buy parent orders are supported")

    def aggregated(self) -> "ParentOrder":
        """Same order scheduled on the k-fold period used by regime_aware_1."""
        return replace(self, tau=self.tau * self.k, k=1)


@dataclass(frozen=True)
class ChildSlice:
    fire_time: float
    qty: int


@dataclass
class EpisodeMetrics:
    pct_comp: float
    wapr: Optional[float]
    normalized_price: Optional[float]
    fills: List[Fill] = field(default_factory=list, repr=False)
    # (time_ns, cumulative completion) after each fill
    completion_curve: List[Tuple[int, float]] = field(default_factory=list, repr=False)

    @property
    def n_fills(self) -> int:
        return len(self.fills)

    @property
    def filled_qty(self) -> int:
        return sum(f.qty for f in self.fills)
