from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple


class Side(str, Enum):
    BUY = "buy"
    SELL = "sell"

    @property
    def opposite(self) -> "Side":
        return Side.SELL if self is Side.BUY else Side.BUY


class OrderKind(str, Enum):
    LIMIT = "limit"
    MARKET = "market"


@dataclass
class Order:
    """
    An order as held by the book. `remaining` is decremented by fills.

    Prices are integer cents, quantities integer shares, times SimTime ns.
    """
    id: int
    agent: int
    side: Side
    kind: OrderKind
    qty: int
    placed_at: int
    price: Optional[int] = None
    remaining: int = field(default=-1)

    def __post_init__(self):
        if self.remaining < 0:
            self.remaining = self.qty

    @property
    def is_buy(self) -> bool:
        return self.side is Side.BUY


FILL_COLUMNS = ("time_ns", "order_id", "counterparty_order_id", "price", "qty", "aggressor_side")


@dataclass(frozen=True)
class Fill:
    order_id: int
    counterparty_order_id: int
    price: int
    qty: int
    time: int
    # Routing information for the exchange
    order_agent: int = -1
    counterparty_agent: int = -1
    aggressor_side: Side = Side.BUY

    def as_row(self) -> dict:
        return {
            "time_ns": self.time,
            "order_id": self.order_id,
            "counterparty_order_id": self.counterparty_order_id,
            "price": self.price,
            "qty": self.qty,
            "aggressor_side": self.aggressor_side.value,
        }


@dataclass
class SubmitResult:
    fills: List[Fill]
    rested_qty: int = 0
    cancelled_qty: int = 0
    # Market order that found no (or not enough) opposite liquidity
    unfilled: bool = False

    @property
    def filled_qty(self) -> int:
        return sum(f.qty for f in self.fills)


@dataclass(frozen=True)
class BookSnapshot:
    time: int
    bids: Tuple[Tuple[int, int], ...]
    asks: Tuple[Tuple[int, int], ...]
    last_trade: Optional[Tuple[int, int, int]] = None

    @property
    def best_bid(self) -> Optional[int]:
        return self.bids[0][0] if self.bids else None

    @property
    def best_ask(self) -> Optional[int]:
        return self.asks[0][0] if self.asks else None

    @property
    def spread(self) -> Optional[int]:
        if self.best_bid is None or self.best_ask is None:
            return None
        return self.best_ask - self.best_bid

    @property
    def mid(self) -> Optional[float]:
        """Mid price; falls back to the only populated side, None on an empty book."""
        if self.best_bid is not None and self.best_ask is not None:
            return (self.best_bid + self.best_ask) / 2.0
        if self.best_bid is not None:
            return float(self.best_bid)
        if self.best_ask is not None:
            return float(self.best_ask)
        return None

    @property
    def last_price(self) -> Optional[int]:
        return self.last_trade[0] if self.last_trade else None


@dataclass(frozen=True)
class OrderInstruction:
    """What an agent asks the exchange to do; the exchange assigns the order id."""
    side: Side
    kind: OrderKind
    qty: int
    price: Optional[int] = None
