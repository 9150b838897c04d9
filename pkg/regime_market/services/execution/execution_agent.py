from collections import deque
from typing import Any, Deque, Dict, List, Optional

import pandas as pd

from regime_market.schemas.models.execution_schema import (
    ChildSlice,
    EpisodeMetrics,
    ParentOrder,
    Strategy,
)
from regime_market.schemas.models.message_schema import SimTime, seconds_to_ns
from regime_market.schemas.models.order_schema import BookSnapshot, OrderInstruction
from regime_market.services.agents.oracle import Oracle
from regime_market.services.agents.trading_agent import TradingAgent
from regime_market.services.execution.metrics import compute_metrics
from regime_market.services.execution.placement import place_child
from regime_market.services.execution.schedule import build_schedule
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("ExecutionAgent")

CHILD_LOG_COLUMNS = (
    "time_ns",
    "child",
    "kind",
    "qty",
    "price",
    "order_id",
    "accepted",
    "rested_qty",
    "cancelled_qty",
    "unfilled",
)


class ExecutionAgent(TradingAgent):
    """
    Works a buy parent order on a TWAP schedule starting `start_offset`
    seconds into the session.

    Each scheduled child asks for an L1 snapshot and the chosen placement
    model turns the snapshot (and, for regime-aware models, the oracle's
    current regime) into orders. Unfilled limit children stay resting.
    Every order placed gets a row in `child_log`, completed by the
    exchange ack; market orders that ran out of depth carry `unfilled`.
    """
    def __init__(
        self,
        name: str,
        exchange_id: int,
        oracle: Oracle,
        parent: ParentOrder,
        strategy: Strategy,
        start_offset: float = 0.0,
    ):
        super().__init__(name, exchange_id)
        self.oracle = oracle
        self.parent = parent
        self.strategy = Strategy(strategy)
        self.start_ns = seconds_to_ns(start_offset)
        scheduled = parent.aggregated() if self.strategy is Strategy.REGIME_AWARE_1 else parent
        self.schedule: List[ChildSlice] = build_schedule(scheduled)
        self.arrival_mid: Optional[float] = None
        self.instructions: List[tuple] = []
        self.child_log: List[Dict[str, Any]] = []
        self._due: Deque[int] = deque()
        # client_ref -> row in child_log
        self._log_rows: Dict[int, int] = {}

    def kernel_starting(self, start_time: SimTime) -> None:
        for i, child in enumerate(self.schedule):
            self.set_wakeup(start_time + self.start_ns + seconds_to_ns(child.fire_time), tag=str(i))

    def wakeup(self, now: SimTime, tag: str) -> None:
        self._due.append(int(tag))
        self.request_market_data()

    def on_market_data(self, now: SimTime, snapshot: BookSnapshot) -> None:
        if not self._due:
            return
        child = self._due.popleft()
        qty = self.schedule[child].qty
        fallback = snapshot.last_price or int(round(self.oracle.fundamental_value(now)))
        if self.arrival_mid is None:
            self.arrival_mid = snapshot.mid if snapshot.mid is not None else float(fallback)
        upward = self.oracle.is_upward(now)
        for instruction in place_child(self.strategy, qty, snapshot, upward, self.parent.k, fallback):
            self.instructions.append((now, instruction))
            client_ref = self.place_order(instruction)
            self._log_rows[client_ref] = len(self.child_log)
            self.child_log.append({
                "time_ns": now,
                "child": child,
                "kind": instruction.kind.value,
                "qty": instruction.qty,
                "price": instruction.price,
                "order_id": None,
                "accepted": None,
                "rested_qty": None,
                "cancelled_qty": None,
                "unfilled": False,
            })

    def on_order_ack(self, now: SimTime, body: Dict[str, Any]) -> None:
        row = self._log_rows.pop(body.get("client_ref"), None)
        if row is None:
            return
        entry = self.child_log[row]
        entry.update(
            order_id=body.get("order_id"),
            accepted=bool(body.get("accepted")),
            rested_qty=body.get("rested_qty", 0),
            cancelled_qty=body.get("cancelled_qty", 0),
            unfilled=bool(body.get("unfilled", False)),
        )
        if entry["unfilled"]:
            logger.debug_print(
                f"Child {entry['child']} {entry['kind']} order ran out of depth, "
                f"{entry['cancelled_qty']} of {entry['qty']} cancelled"
            )

    def child_log_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.child_log, columns=list(CHILD_LOG_COLUMNS))

    def metrics(self) -> EpisodeMetrics:
        arrival = self.arrival_mid
        if arrival is None:
            arrival = self.oracle.fundamental_value(min(self.start_ns, self.oracle.horizon_ns))
        return compute_metrics(self.fills, self.parent, arrival)

    @property
    def submitted(self) -> List[OrderInstruction]:
        return [instruction for _, instruction in self.instructions]
