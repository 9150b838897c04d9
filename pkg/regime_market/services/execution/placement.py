from typing import Dict, List, Optional

from regime_market.core.exceptions import ExecutionError
from regime_market.schemas.models.execution_schema import Strategy
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    OrderInstruction,
    OrderKind,
    Side,
)


def passive_bid_price(snapshot: BookSnapshot, fallback: Optional[int] = None) -> Optional[int]:
    """
    Price for a passive buy: the best bid, else the last trade capped one
    tick below the best ask, else one tick below the best ask, else `fallback`.
    """
    if snapshot.best_bid is not None:
        return snapshot.best_bid
    price = snapshot.last_price if snapshot.last_price is not None else fallback
    if snapshot.best_ask is not None:
        price = snapshot.best_ask - 1 if price is None else min(price, snapshot.best_ask - 1)
    return max(1, price) if price is not None else None


def opm_full_mo(qty: int, snapshot: BookSnapshot) -> List[OrderInstruction]:
    return [OrderInstruction(Side.BUY, OrderKind.MARKET, qty)]


def opm_full_lo(qty: int, snapshot: BookSnapshot, fallback: Optional[int] = None) -> List[OrderInstruction]:
    price = passive_bid_price(snapshot, fallback)
    if price is None:
        return []
    return [OrderInstruction(Side.BUY, OrderKind.LIMIT, qty, price)]


def opm_regime_aware_0(qty: int, snapshot: BookSnapshot, upward: bool,
                       fallback: Optional[int] = None) -> List[OrderInstruction]:
    """Market order in an upward regime, passive limit at the best bid otherwise."""
    if upward:
        return opm_full_mo(qty, snapshot)
    return opm_full_lo(qty, snapshot, fallback)


def opm_regime_aware_1(qty: int, snapshot: BookSnapshot, upward: bool, k: int,
                       fallback: Optional[int] = None) -> List[OrderInstruction]:
    """
    Aggregated child of k periods. Upward: one market order for all of it.
    Downward: k near-equal limits laddered at bestBid, bestBid - 1, ...,
    bestBid - (k - 1); levels below 1 collapse onto price 1.
    """
    if upward:
        return opm_full_mo(qty, snapshot)
    top = passive_bid_price(snapshot, fallback)
    if top is None:
        return []
    base, extra = divmod(qty, k)
    by_price: Dict[int, int] = {}
    for i in range(k):
        size = base + (1 if i < extra else 0)
        if size == 0:
            continue
        price = max(1, top - i)
        by_price[price] = by_price.get(price, 0) + size
    return [OrderInstruction(Side.BUY, OrderKind.LIMIT, size, price) for price, size in by_price.items()]


def place_child(strategy: Strategy, qty: int, snapshot: BookSnapshot, upward: bool,
                k: int = 1, fallback: Optional[int] = None) -> List[OrderInstruction]:
    """Order instructions for one scheduled child quantity under `strategy`."""
    if qty <= 0:
        return []
    if strategy is Strategy.FULL_MO:
        return opm_full_mo(qty, snapshot)
    if strategy is Strategy.FULL_LO:
        return opm_full_lo(qty, snapshot, fallback)
    if strategy is Strategy.REGIME_AWARE_0:
        return opm_regime_aware_0(qty, snapshot, upward, fallback)
    if strategy is Strategy.REGIME_AWARE_1:
        return opm_regime_aware_1(qty, snapshot, upward, k, fallback)
    raise ExecutionError(f"Unknown strategy: {strategy!r}")
