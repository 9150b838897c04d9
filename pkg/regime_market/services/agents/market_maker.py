import math
from typing import List

from regime_market.schemas.config_schema import MarketMakerConfig
from regime_market.schemas.models.message_schema import SimTime, seconds_to_ns
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    OrderInstruction,
    OrderKind,
    Side,
)
from regime_market.services.agents.trading_agent import TradingAgent


def ladder_orders(mid: float, levels: int, size: int) -> List[OrderInstruction]:
    """Symmetric ladder: bids from ceil(mid) - 1 down, asks from floor(mid) + 1 up, one tick apart."""
    top_bid = math.ceil(mid) - 1
    top_ask = math.floor(mid) + 1
    orders = []
    for i in range(levels):
        if top_bid - i >= 1:
            orders.append(OrderInstruction(Side.BUY, OrderKind.LIMIT, size, top_bid - i))
    for i in range(levels):
        orders.append(OrderInstruction(Side.SELL, OrderKind.LIMIT, size, top_ask + i))
    return orders


class MarketMaker(TradingAgent):
    """Refreshes a fixed ladder around the mid every `wake_interval` seconds, starting at t=0."""
    def __init__(self, name: str, exchange_id: int, config: MarketMakerConfig, reference_price: int):
        super().__init__(name, exchange_id)
        self.config = config
        self.reference_price = reference_price
        self._interval_ns = seconds_to_ns(config.wake_interval)

    def kernel_starting(self, start_time: SimTime) -> None:
        self.set_wakeup(start_time)

    def wakeup(self, now: SimTime, tag: str) -> None:
        self.request_market_data()
        self.set_wakeup(now + self._interval_ns)

    def on_market_data(self, now: SimTime, snapshot: BookSnapshot) -> None:
        mid = snapshot.mid
        if mid is None:
            mid = snapshot.last_price if snapshot.last_price is not None else self.reference_price
        self.cancel_all_orders()
        for instruction in ladder_orders(mid, self.config.levels, self.config.size):
            self.place_order(instruction)
