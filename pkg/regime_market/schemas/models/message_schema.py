from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Union

# Simulation time: integer nanoseconds since session open
SimTime = int

NS_PER_SECOND = 1_000_000_000


def seconds_to_ns(seconds: float) -> SimTime:
    return int(round(seconds * NS_PER_SECOND))


class MessageKind(str, Enum):
    NEW_ORDER = "NewOrder"
    CANCEL_ORDER = "CancelOrder"
    ORDER_ACK = "OrderAck"
    FILL = "Fill"
    MARKET_DATA_REQUEST = "MarketDataRequest"
    MARKET_DATA_SNAPSHOT = "MarketDataSnapshot"
    ORACLE_QUERY = "OracleQuery"
    ORACLE_REPLY = "OracleReply"


@dataclass(frozen=True)
class Message:
    sender: int
    recipient: int
    kind: MessageKind
    body: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class WakeUp:
    tag: str = ""


@dataclass(frozen=True)
class Event:
    fire_at: SimTime
    seq: int
    target: int
    payload: Union[Message, WakeUp]

    @property
    def kind(self) -> str:
        if isinstance(self.payload, Message):
            return self.payload.kind.value
        return "WakeUp"

    def sort_key(self):
        return (self.fire_at, self.seq)

    def as_record(self) -> Dict[str, Any]:
        return {"time": self.fire_at, "seq": self.seq, "target": self.target, "kind": self.kind}
