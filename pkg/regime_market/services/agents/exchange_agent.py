from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from regime_market.core.exceptions import OracleError, OrderBookError
from regime_market.schemas.models.message_schema import Message, MessageKind, SimTime
from regime_market.schemas.models.order_schema import FILL_COLUMNS, Fill, Order, OrderKind, Side
from regime_market.services.agents.oracle import Oracle
from regime_market.services.event_kernel.base_agent import BaseAgent
from regime_market.services.order_book.order_book import OrderBook
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("Exchange")

L1_COLUMNS = ("time_ns", "best_bid", "best_ask", "last_price", "last_qty")

ORACLE_QUERIES = ("regime", "fundamental")


class ExchangeAgent(BaseAgent):
    """
    Owns the order book. Every request arrives as a message and every
    answer leaves as one; malformed requests get a rejected OrderAck.
    """
    def __init__(self, name: str = "Exchange", oracle: Optional[Oracle] = None, record_l1: bool = True):
        super().__init__(name)
        self.book = OrderBook()
        self.oracle = oracle
        self.record_l1 = record_l1
        self.trades: List[Fill] = []
        self.l1_history: List[Tuple[int, Optional[int], Optional[int], Optional[int], Optional[int]]] = []
        self.rejected = 0
        self._next_order_id = 0
        self._l1_trade = None

    def receive_message(self, now: SimTime, message: Message) -> None:
        kind = message.kind
        if kind is MessageKind.NEW_ORDER:
            self._new_order(now, message)
        elif kind is MessageKind.CANCEL_ORDER:
            self._cancel_order(message)
        elif kind is MessageKind.MARKET_DATA_REQUEST:
            self._market_data(now, message)
        elif kind is MessageKind.ORACLE_QUERY:
            self._oracle_query(now, message)
        else:
            self._reject(message, None, f"unsupported message kind {kind.value}")

    # --- handlers ---
    def _new_order(self, now: SimTime, message: Message) -> None:
        body = message.body
        client_ref = body.get("client_ref")
        try:
            side = Side(body["side"])
            order_kind = OrderKind(body["kind"])
            qty = int(body["qty"])
            price = body.get("price")
            price = int(price) if price is not None else None
        except (KeyError, ValueError, TypeError) as e:
            self._reject(message, client_ref, f"malformed order: {e!r}")
            return

        order = Order(
            id=self._next_order_id,
            agent=message.sender,
            side=side,
            kind=order_kind,
            qty=qty,
            placed_at=now,
            price=price if order_kind is OrderKind.LIMIT else None,
        )
        try:
            result = self.book.submit(order, now)
        except OrderBookError as e:
            self._reject(message, client_ref, str(e))
            return
        self._next_order_id += 1

        self.send_message(message.sender, MessageKind.ORDER_ACK, {
            "action": "new",
            "accepted": True,
            "client_ref": client_ref,
            "order_id": order.id,
            "rested_qty": result.rested_qty,
            "cancelled_qty": result.cancelled_qty,
            "unfilled": result.unfilled,
        })
        for fill in result.fills:
            self.trades.append(fill)
            self.send_message(fill.order_agent, MessageKind.FILL, {"fill": fill, "order_id": fill.order_id})
            self.send_message(
                fill.counterparty_agent, MessageKind.FILL,
                {"fill": fill, "order_id": fill.counterparty_order_id},
            )
        self._record_l1(now)

    def _cancel_order(self, message: Message) -> None:
        order_id = message.body.get("order_id")
        resting = self.book.get_order(order_id) if isinstance(order_id, int) else None
        # Agents may only cancel their own orders
        ok = resting is not None and resting.agent == message.sender and self.book.cancel(order_id)
        self.send_message(message.sender, MessageKind.ORDER_ACK, {
            "action": "cancel",
            "accepted": bool(ok),
            "order_id": order_id,
        })
        if ok:
            self._record_l1(self.current_time)

    def _market_data(self, now: SimTime, message: Message) -> None:
        depth = message.body.get("depth", 1)
        if not isinstance(depth, int) or depth < 1:
            self._reject(message, None, f"invalid depth {depth!r}")
            return
        self.send_message(message.sender, MessageKind.MARKET_DATA_SNAPSHOT, {
            "snapshot": self.book.snapshot(depth, now),
        })

    def _oracle_query(self, now: SimTime, message: Message) -> None:
        query = message.body.get("query")
        reply: Dict[str, Any] = {"query": query, "time": now}
        if self.oracle is None or query not in ORACLE_QUERIES:
            reply["error"] = f"cannot answer oracle query {query!r}"
        else:
            try:
                if query == "regime":
                    reply["value"] = self.oracle.current_regime(now)
                    reply["upward"] = self.oracle.is_upward(now)
                else:
                    reply["value"] = self.oracle.fundamental_value(now)
            except OracleError as e:
                reply["error"] = str(e)
        self.send_message(message.sender, MessageKind.ORACLE_REPLY, reply)

    def _reject(self, message: Message, client_ref, reason: str) -> None:
        self.rejected += 1
        logger.debug_print(f"Rejected {message.kind.value} from agent {message.sender}: {reason}")
        self.send_message(message.sender, MessageKind.ORDER_ACK, {
            "action": "new",
            "accepted": False,
            "client_ref": client_ref,
            "reason": reason,
        })

    # --- L1 stream ---
    def _record_l1(self, now: SimTime) -> None:
        if not self.record_l1:
            return
        last = self.book.last_trade
        row = (
            now,
            self.book.best_bid,
            self.book.best_ask,
            last[0] if last else None,
            last[1] if last else None,
        )
        if self.l1_history and self.l1_history[-1][1:3] == row[1:3] and last is self._l1_trade:
            return
        self._l1_trade = last
        self.l1_history.append(row)

    def l1_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.l1_history, columns=list(L1_COLUMNS))

    def trades_frame(self) -> pd.DataFrame:
        return pd.DataFrame([f.as_row() for f in self.trades], columns=list(FILL_COLUMNS))

    def kernel_stopping(self) -> None:
        logger.debug_print(
            f"Session closed: {len(self.trades)} trades, volume {self.book.volume_traded}, "
            f"{self.rejected} rejected requests"
        )
