from collections import deque
from typing import Deque, List, Sequence

import numpy as np

from regime_market.schemas.config_schema import MomentumAgentConfig
from regime_market.schemas.models.message_schema import SimTime
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    OrderInstruction,
    OrderKind,
    Side,
)
from regime_market.services.agents.trading_agent import TradingAgent


def momentum_orders(mids: Sequence[float], short_window: int, long_window: int,
                    order_size: int) -> List[OrderInstruction]:
    """Market buy when the short moving average is above the long one, sell when below."""
    if len(mids) < long_window:
        return []
    history = np.asarray(mids, dtype=float)
    short_ma = history[-short_window:].mean()
    long_ma = history[-long_window:].mean()
    if short_ma > long_ma:
        return [OrderInstruction(Side.BUY, OrderKind.MARKET, order_size)]
    if short_ma < long_ma:
        return [OrderInstruction(Side.SELL, OrderKind.MARKET, order_size)]
    return []


class MomentumAgent(TradingAgent):
    def __init__(self, name: str, exchange_id: int, config: MomentumAgentConfig):
        super().__init__(name, exchange_id)
        self.config = config
        self.mids: Deque[float] = deque(maxlen=config.long_window)

    def kernel_starting(self, start_time: SimTime) -> None:
        self.schedule_next_wakeup(self.config.wake_rate)

    def wakeup(self, now: SimTime, tag: str) -> None:
        self.request_market_data()

    def on_market_data(self, now: SimTime, snapshot: BookSnapshot) -> None:
        if snapshot.mid is not None:
            self.mids.append(snapshot.mid)
            for instruction in momentum_orders(self.mids, self.config.short_window,
                                               self.config.long_window, self.config.order_size):
                self.place_order(instruction)
        self.schedule_next_wakeup(self.config.wake_rate)
