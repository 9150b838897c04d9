from typing import List

from regime_market.schemas.config_schema import ValueAgentConfig
from regime_market.schemas.models.message_schema import SimTime
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    OrderInstruction,
    OrderKind,
    Side,
)
from regime_market.services.agents.oracle import Oracle
from regime_market.services.agents.trading_agent import TradingAgent


def value_orders(snapshot: BookSnapshot, fundamental: int, order_size: int,
                 offset: int = 0) -> List[OrderInstruction]:
    """
    Orders of a value trader observing `fundamental` against `snapshot`.

    Buys when the fundamental is above the mid, sells when below, abstains
    on a tie. A fundamental beyond the far touch is taken at that touch;
    otherwise the order joins one tick inside its own touch, capped by the
    fundamental. `offset` moves the price further away from the market.
    """
    mid = snapshot.mid
    bid, ask = snapshot.best_bid, snapshot.best_ask
    if mid is None:
        return [
            OrderInstruction(Side.BUY, OrderKind.LIMIT, order_size, max(1, fundamental - 1 - offset)),
            OrderInstruction(Side.SELL, OrderKind.LIMIT, order_size, fundamental + 1 + offset),
        ]
    if fundamental == mid:
        return []

    if fundamental > mid:
        if ask is not None and fundamental >= ask:
            price = ask - offset
        elif bid is not None:
            price = min(fundamental, bid + 1) - offset
        else:
            price = min(fundamental, ask - 1) - offset
        return [OrderInstruction(Side.BUY, OrderKind.LIMIT, order_size, max(1, price))]

    if bid is not None and fundamental <= bid:
        price = bid + offset
    elif ask is not None:
        price = max(fundamental, ask - 1) + offset
    else:
        price = max(fundamental, bid + 1) + offset
    return [OrderInstruction(Side.SELL, OrderKind.LIMIT, order_size, max(1, price))]


class ValueAgent(TradingAgent):
    """Trades toward a noisy observation of the fundamental at Poisson wake-ups."""
    def __init__(self, name: str, exchange_id: int, oracle: Oracle, config: ValueAgentConfig):
        super().__init__(name, exchange_id)
        self.oracle = oracle
        self.config = config

    def kernel_starting(self, start_time: SimTime) -> None:
        self.schedule_next_wakeup(self.config.wake_rate)

    def wakeup(self, now: SimTime, tag: str) -> None:
        self.cancel_all_orders()
        self.request_market_data()

    def on_market_data(self, now: SimTime, snapshot: BookSnapshot) -> None:
        fundamental = self.oracle.observe_fundamental(now, self.rng, self.config.noise_sigma)
        for instruction in value_orders(snapshot, fundamental, self.config.order_size,
                                        self.config.limit_offset_ticks):
            self.place_order(instruction)
        self.schedule_next_wakeup(self.config.wake_rate)
