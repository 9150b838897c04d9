from collections import deque
from typing import Deque, Dict, List, Optional, Set, Tuple

from sortedcontainers import SortedDict

from regime_market.core.exceptions import DuplicateOrderError, InvalidOrderError
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    Fill,
    Order,
    OrderKind,
    SubmitResult,
)

PriceLevels = SortedDict  # price -> deque of resting Orders, FIFO


class OrderBook:
    """
    Single-instrument price-time priority book.

    Both sides are SortedDicts keyed by integer price in ascending order:
    the best bid is the last key of `bids`, the best ask the first key of
    `asks`. Trades print at the resting order's price.
    """
    def __init__(self, symbol: str = "SIM"):
        self.symbol = symbol
        self.bids: PriceLevels = SortedDict()
        self.asks: PriceLevels = SortedDict()
        self._resting: Dict[int, Order] = {}
        self._seen_ids: Set[int] = set()
        self.last_trade: Optional[Tuple[int, int, int]] = None
        self.volume_traded = 0

    # --- queries ---
    @property
    def best_bid(self) -> Optional[int]:
        return self.bids.peekitem(-1)[0] if self.bids else None

    @property
    def best_ask(self) -> Optional[int]:
        return self.asks.peekitem(0)[0] if self.asks else None

    def get_order(self, order_id: int) -> Optional[Order]:
        return self._resting.get(order_id)

    def resting_orders(self, agent: int) -> List[Order]:
        return [o for o in self._resting.values() if o.agent == agent]

    def __len__(self) -> int:
        return len(self._resting)

    # --- mutations ---
    def submit(self, order: Order, now: int) -> SubmitResult:
        self._validate(order)
        self._seen_ids.add(order.id)

        fills = self._match(order, now)
        result = SubmitResult(fills=fills)
        if order.remaining > 0:
            if order.kind is OrderKind.LIMIT:
                self._rest(order)
                result.rested_qty = order.remaining
            else:
                # Market orders never rest
                result.cancelled_qty = order.remaining
                result.unfilled = True
                order.remaining = 0
        return result

    def cancel(self, order_id: int) -> bool:
        order = self._resting.pop(order_id, None)
        if order is None:
            return False
        levels = self.bids if order.is_buy else self.asks
        queue = levels[order.price]
        queue.remove(order)
        if not queue:
            del levels[order.price]
        return True

    def snapshot(self, depth: Optional[int] = None, now: int = 0) -> BookSnapshot:
        """L2 view, best price first, with the aggregated remaining quantity per level."""
        return BookSnapshot(
            time=now,
            bids=self._levels(reversed(self.bids.keys()), self.bids, depth),
            asks=self._levels(iter(self.asks.keys()), self.asks, depth),
            last_trade=self.last_trade,
        )

    # --- internals ---
    def _validate(self, order: Order) -> None:
        if order.id in self._seen_ids:
            raise DuplicateOrderError(order.id)
        if order.qty <= 0:
            raise InvalidOrderError(order.id, f"quantity must be positive, got {order.qty}")
        if order.kind is OrderKind.LIMIT and (order.price is None or order.price <= 0):
            raise InvalidOrderError(order.id, f"limit price must be positive, got {order.price}")

    def _match(self, order: Order, now: int) -> List[Fill]:
        opposite = self.asks if order.is_buy else self.bids
        fills: List[Fill] = []
        while order.remaining > 0 and opposite:
            price, queue = opposite.peekitem(0) if order.is_buy else opposite.peekitem(-1)
            if order.kind is OrderKind.LIMIT:
                if order.is_buy and price > order.price:
                    break
                if not order.is_buy and price < order.price:
                    break
            resting = queue[0]
            qty = min(order.remaining, resting.remaining)
            fills.append(Fill(
                order_id=order.id,
                counterparty_order_id=resting.id,
                price=price,
                qty=qty,
                time=now,
                order_agent=order.agent,
                counterparty_agent=resting.agent,
                aggressor_side=order.side,
            ))
            order.remaining -= qty
            resting.remaining -= qty
            self.volume_traded += qty
            self.last_trade = (price, qty, now)
            if resting.remaining == 0:
                queue.popleft()
                del self._resting[resting.id]
                if not queue:
                    del opposite[price]
        return fills

    def _rest(self, order: Order) -> None:
        levels = self.bids if order.is_buy else self.asks
        queue: Deque[Order] = levels.get(order.price)
        if queue is None:
            queue = deque()
            levels[order.price] = queue
        queue.append(order)
        self._resting[order.id] = order

    @staticmethod
    def _levels(prices, levels: PriceLevels, depth: Optional[int]) -> Tuple[Tuple[int, int], ...]:
        out = []
        for price in prices:
            if depth is not None and len(out) >= depth:
                break
            out.append((price, sum(o.remaining for o in levels[price])))
        return tuple(out)
