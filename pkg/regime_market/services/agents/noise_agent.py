from typing import List, Optional

import numpy as np

from regime_market.schemas.config_schema import NoiseAgentConfig
from regime_market.schemas.models.message_schema import SimTime
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    OrderInstruction,
    OrderKind,
    Side,
)
from regime_market.services.agents.trading_agent import TradingAgent


def noise_orders(snapshot: BookSnapshot, config: NoiseAgentConfig, rng: np.random.Generator,
                 reference_price: int) -> List[OrderInstruction]:
    """
    One order with a uniformly random side and size.

    With probability `market_order_prob` it is a market order, otherwise a
    limit within +/- spread_width ticks of the own-side touch. An empty
    book falls back to the last trade, then to `reference_price`.
    """
    side = Side.BUY if rng.random() < 0.5 else Side.SELL
    size = int(rng.integers(config.min_size, config.max_size + 1))
    if rng.random() < config.market_order_prob:
        return [OrderInstruction(side, OrderKind.MARKET, size)]

    touch = _own_touch(snapshot, side)
    if touch is None:
        touch = snapshot.last_price if snapshot.last_price is not None else reference_price
    price = touch + int(rng.integers(-config.spread_width, config.spread_width + 1))
    return [OrderInstruction(side, OrderKind.LIMIT, size, max(1, price))]


def _own_touch(snapshot: BookSnapshot, side: Side) -> Optional[int]:
    if side is Side.BUY:
        if snapshot.best_bid is not None:
            return snapshot.best_bid
        return snapshot.best_ask - 1 if snapshot.best_ask is not None else None
    if snapshot.best_ask is not None:
        return snapshot.best_ask
    return snapshot.best_bid + 1 if snapshot.best_bid is not None else None


class NoiseAgent(TradingAgent):
    def __init__(self, name: str, exchange_id: int, config: NoiseAgentConfig, reference_price: int):
        super().__init__(name, exchange_id)
        self.config = config
        self.reference_price = reference_price

    def kernel_starting(self, start_time: SimTime) -> None:
        self.schedule_next_wakeup(self.config.wake_rate)

    def wakeup(self, now: SimTime, tag: str) -> None:
        self.cancel_all_orders()
        self.request_market_data()

    def on_market_data(self, now: SimTime, snapshot: BookSnapshot) -> None:
        for instruction in noise_orders(snapshot, self.config, self.rng, self.reference_price):
            self.place_order(instruction)
        self.schedule_next_wakeup(self.config.wake_rate)
