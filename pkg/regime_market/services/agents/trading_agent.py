from typing import Any, Dict, List, Optional

from regime_market.schemas.models.message_schema import (
    Message,
    MessageKind,
    SimTime,
    seconds_to_ns,
)
from regime_market.schemas.models.order_schema import (
    BookSnapshot,
    Fill,
    OrderInstruction,
    Side,
)
from regime_market.services.event_kernel.base_agent import BaseAgent


class TradingAgent(BaseAgent):
    """
    Agent that trades through the exchange by messages only.

    Tracks its resting orders (by exchange order id), its fills and the
    last book snapshot it received. Subclasses override the `on_*` hooks.
    """
    def __init__(self, name: str, exchange_id: int):
        super().__init__(name)
        self.exchange_id = exchange_id
        # exchange order id -> remaining resting quantity
        self.open_orders: Dict[int, int] = {}
        self.fills: List[Fill] = []
        self.holdings = 0
        self.cash = 0
        self.last_snapshot: Optional[BookSnapshot] = None
        self.rejections = 0
        self._next_client_ref = 0
        self._pending: Dict[int, OrderInstruction] = {}

    # --- outgoing ---
    def request_market_data(self, depth: int = 1) -> None:
        self.send_message(self.exchange_id, MessageKind.MARKET_DATA_REQUEST, {"depth": depth})

    def place_order(self, instruction: OrderInstruction) -> int:
        client_ref = self._next_client_ref
        self._next_client_ref += 1
        self._pending[client_ref] = instruction
        self.send_message(self.exchange_id, MessageKind.NEW_ORDER, {
            "client_ref": client_ref,
            "side": instruction.side.value,
            "kind": instruction.kind.value,
            "qty": instruction.qty,
            "price": instruction.price,
        })
        return client_ref

    def cancel_order(self, order_id: int) -> None:
        self.send_message(self.exchange_id, MessageKind.CANCEL_ORDER, {"order_id": order_id})

    def cancel_all_orders(self) -> None:
        for order_id in list(self.open_orders):
            self.cancel_order(order_id)

    def schedule_next_wakeup(self, rate_per_second: float) -> None:
        """Poisson wake-ups: exponential gap with the given rate."""
        gap = seconds_to_ns(self.rng.exponential(1.0 / rate_per_second))
        self.set_wakeup(self.current_time + max(gap, 1))

    # --- incoming ---
    def receive_message(self, now: SimTime, message: Message) -> None:
        body = message.body
        if message.kind is MessageKind.ORDER_ACK:
            self._handle_ack(now, body)
        elif message.kind is MessageKind.FILL:
            self._handle_fill(now, body)
        elif message.kind is MessageKind.MARKET_DATA_SNAPSHOT:
            self.last_snapshot = body["snapshot"]
            self.on_market_data(now, self.last_snapshot)
        elif message.kind is MessageKind.ORACLE_REPLY:
            self.on_oracle_reply(now, body)

    def _handle_ack(self, now: SimTime, body: Dict[str, Any]) -> None:
        if body.get("action") == "cancel":
            if body.get("accepted"):
                self.open_orders.pop(body["order_id"], None)
            return
        self._pending.pop(body.get("client_ref"), None)
        if not body.get("accepted"):
            self.rejections += 1
        elif body.get("rested_qty", 0) > 0:
            self.open_orders[body["order_id"]] = body["rested_qty"]
        self.on_order_ack(now, body)

    def _handle_fill(self, now: SimTime, body: Dict[str, Any]) -> None:
        fill: Fill = body["fill"]
        own_id = body["order_id"]
        aggressor = own_id == fill.order_id
        side = fill.aggressor_side if aggressor else fill.aggressor_side.opposite
        if not aggressor and own_id in self.open_orders:
            # Passive fills eat into the resting quantity reported by the ack
            left = self.open_orders[own_id] - fill.qty
            if left > 0:
                self.open_orders[own_id] = left
            else:
                del self.open_orders[own_id]
        signed = fill.qty if side is Side.BUY else -fill.qty
        self.holdings += signed
        self.cash -= signed * fill.price
        self.fills.append(fill)
        self.on_fill(now, fill, side)

    # --- hooks ---
    def on_market_data(self, now: SimTime, snapshot: BookSnapshot) -> None:
        pass

    def on_order_ack(self, now: SimTime, body: Dict[str, Any]) -> None:
        pass

    def on_fill(self, now: SimTime, fill: Fill, side: Side) -> None:
        pass

    def on_oracle_reply(self, now: SimTime, body: Dict[str, Any]) -> None:
        pass
