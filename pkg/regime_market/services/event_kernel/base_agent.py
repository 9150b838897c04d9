from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, Dict, Optional

import numpy as np

from regime_market.schemas.models.message_schema import (
    Event,
    Message,
    MessageKind,
    SimTime,
    WakeUp,
)

if TYPE_CHECKING:
    from regime_market.services.event_kernel.kernel import Kernel


class BaseAgent(ABC):
    """
    Base class for everything the kernel delivers events to.

    The kernel attaches an id, its own seeded random stream and itself on
    registration; subclasses only react to wake-ups and messages.
    """
    def __init__(self, name: str):
        self.name = name
        self.id: Optional[int] = None
        self.kernel: Optional["Kernel"] = None
        self.rng: Optional[np.random.Generator] = None

    def attach(self, kernel: "Kernel", agent_id: int, rng: np.random.Generator) -> None:
        self.kernel = kernel
        self.id = agent_id
        self.rng = rng

    @property
    def current_time(self) -> SimTime:
        return self.kernel.now

    # --- lifecycle hooks ---
    def kernel_starting(self, start_time: SimTime) -> None:
        pass

    def kernel_stopping(self) -> None:
        pass

    def wakeup(self, now: SimTime, tag: str) -> None:
        pass

    @abstractmethod
    def receive_message(self, now: SimTime, message: Message) -> None:
        pass

    # --- helpers ---
    def set_wakeup(self, at: SimTime, tag: str = "") -> Event:
        return self.kernel.schedule(at, self.id, WakeUp(tag))

    def send_message(
        self,
        recipient: int,
        kind: MessageKind,
        body: Optional[Dict[str, Any]] = None,
        latency: Optional[int] = None,
    ) -> Event:
        return self.kernel.send(Message(self.id, recipient, kind, body or {}), latency=latency)

    def handle(self, event: Event) -> None:
        if isinstance(event.payload, WakeUp):
            self.wakeup(event.fire_at, event.payload.tag)
        else:
            self.receive_message(event.fire_at, event.payload)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(id={self.id}, name={self.name!r})"
