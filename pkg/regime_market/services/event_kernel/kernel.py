import heapq
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from regime_market.core.config import settings
from regime_market.core.exceptions import (
    AgentRegistrationError,
    EventHandlerError,
    KernelError,
    SchedulingError,
    UnknownRecipientError,
)
from regime_market.schemas.models.message_schema import Event, Message, SimTime, WakeUp
from regime_market.services.event_kernel.base_agent import BaseAgent
from regime_market.utils.CustomLogger import CustomLogger
from regime_market.utils.file_utils import write_jsonl

logger = CustomLogger("Kernel")


@dataclass(frozen=True)
class KernelSummary:
    events_processed: int
    # Time of the last processed event, 0 when nothing ran
    final_time: SimTime
    horizon: SimTime


class Kernel:
    """
    Single-threaded discrete-event loop.

    Events are ordered by (fire_at, seq) where seq is a kernel-wide insertion
    counter, so equal timestamps are delivered in scheduling order.
    """
    def __init__(
        self,
        seed: int = 0,
        default_latency_ns: Optional[int] = None,
        record_event_log: bool = False,
    ):
        self.seed = seed
        self.default_latency_ns = (
            settings.DEFAULT_LATENCY_NS if default_latency_ns is None else default_latency_ns
        )
        self.now: SimTime = 0
        self._agents: List[BaseAgent] = []
        self._queue: List[Tuple[SimTime, int, Event]] = []
        self._seq = 0
        self._started = False
        self._pair_latency: Dict[Tuple[int, int], int] = {}
        self.event_log: Optional[List[dict]] = [] if record_event_log else None

    @property
    def agents(self) -> List[BaseAgent]:
        return list(self._agents)

    def agent(self, agent_id: int) -> BaseAgent:
        if not 0 <= agent_id < len(self._agents):
            raise UnknownRecipientError(agent_id)
        return self._agents[agent_id]

    def register_agent(self, agent: BaseAgent) -> int:
        if self._started:
            raise AgentRegistrationError(agent.name, "the kernel is already running")
        if agent.kernel is not None:
            raise AgentRegistrationError(agent.name, f"already registered with id {agent.id}")
        agent_id = len(self._agents)
        # Stream depends only on (seed, id): other agents cannot perturb it
        agent.attach(self, agent_id, np.random.default_rng([self.seed, agent_id]))
        self._agents.append(agent)
        return agent_id

    def set_latency(self, sender: int, recipient: int, latency_ns: int) -> None:
        if latency_ns < 0:
            raise SchedulingError(self.now + latency_ns, self.now)
        self._pair_latency[(sender, recipient)] = latency_ns

    def latency(self, sender: int, recipient: int) -> int:
        return self._pair_latency.get((sender, recipient), self.default_latency_ns)

    def schedule(self, fire_at: SimTime, target: int, payload: Union[Message, WakeUp]) -> Event:
        if fire_at < self.now:
            raise SchedulingError(fire_at, self.now)
        if not 0 <= target < len(self._agents):
            raise UnknownRecipientError(target)
        event = Event(fire_at=int(fire_at), seq=self._seq, target=target, payload=payload)
        self._seq += 1
        heapq.heappush(self._queue, (event.fire_at, event.seq, event))
        return event

    def send(self, message: Message, latency: Optional[int] = None) -> Event:
        if not 0 <= message.recipient < len(self._agents):
            raise UnknownRecipientError(message.recipient)
        if latency is None:
            latency = self.latency(message.sender, message.recipient)
        return self.schedule(self.now + latency, message.recipient, message)

    def run(self, horizon: SimTime) -> KernelSummary:
        """Processes events up to and including `horizon`; later ones are dropped."""
        if self._started:
            raise AgentRegistrationError("kernel", "run() may only be called once")
        self._started = True
        logger.debug_print(f"Starting run with {len(self._agents)} agents, horizon={horizon} ns")

        for agent in self._agents:
            agent.kernel_starting(self.now)

        processed = 0
        final_time = 0
        queue = self._queue
        while queue and queue[0][0] <= horizon:
            _, _, event = heapq.heappop(queue)
            self.now = event.fire_at
            try:
                self._agents[event.target].handle(event)
            except Exception as e:
                raise EventHandlerError(event.fire_at, event.seq, event.target, event.kind, e) from e
            processed += 1
            final_time = event.fire_at
            if self.event_log is not None:
                self.event_log.append(event.as_record())

        dropped = len(queue)
        queue.clear()
        for agent in self._agents:
            agent.kernel_stopping()

        logger.debug_print(f"Run finished: {processed} events, {dropped} past the horizon dropped")
        return KernelSummary(events_processed=processed, final_time=final_time, horizon=horizon)

    def write_event_log(self, file_path: Path) -> int:
        if self.event_log is None:
            raise KernelError("event log recording was not enabled for this kernel")
        return write_jsonl(Path(file_path), self.event_log)
