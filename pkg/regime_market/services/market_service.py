from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd

from regime_market.schemas.config_schema import ExperimentConfig
from regime_market.schemas.models.execution_schema import EpisodeMetrics, Strategy
from regime_market.schemas.models.fundamental_schema import FundamentalPath
from regime_market.schemas.models.order_schema import FILL_COLUMNS
from regime_market.services.agents import Oracle, build_background_population
from regime_market.services.event_kernel import Kernel, KernelSummary
from regime_market.services.execution import ExecutionAgent
from regime_market.services.sde_engine import generate_ctmstou_path
from regime_market.utils.CustomLogger import CustomLogger
from regime_market.utils.file_utils import write_frame, write_jsonl

logger = CustomLogger("MarketService")

RESULT_COLUMNS = (
    "seed",
    "strategy",
    "pct_comp",
    "wapr",
    "normalized_price",
    "n_fills",
    "regime_switch_count",
    "status",
)


@dataclass
class EpisodeResult:
    seed: int
    strategy: Strategy
    metrics: EpisodeMetrics
    summary: KernelSummary
    path: FundamentalPath = field(repr=False)
    l1: pd.DataFrame = field(repr=False)
    child_log: pd.DataFrame = field(default_factory=pd.DataFrame, repr=False)
    instructions: List[tuple] = field(default_factory=list, repr=False)
    event_log: Optional[List[dict]] = field(default=None, repr=False)

    @property
    def regime_switch_count(self) -> int:
        return self.path.trace.switch_count

    def fills_frame(self) -> pd.DataFrame:
        return pd.DataFrame([f.as_row() for f in self.metrics.fills], columns=list(FILL_COLUMNS))

    def completion_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.metrics.completion_curve, columns=["time_ns", "pct_comp"])

    def as_row(self, status: str = "ok") -> dict:
        return {
            "seed": self.seed,
            "strategy": self.strategy.value,
            "pct_comp": self.metrics.pct_comp,
            "wapr": self.metrics.wapr,
            "normalized_price": self.metrics.normalized_price,
            "n_fills": self.metrics.n_fills,
            "regime_switch_count": self.regime_switch_count,
            "status": status,
        }

    def write(self, out_dir: Path, stem: Optional[str] = None) -> None:
        """Writes fills, L1 and per-child order CSVs (and the event log when recorded) under `out_dir`."""
        stem = stem or f"{self.strategy.value}_seed{self.seed}"
        write_frame(self.fills_frame(), out_dir / "fills" / f"{stem}.csv")
        write_frame(self.l1, out_dir / "l1" / f"{stem}.csv")
        write_frame(self.child_log, out_dir / "episodes" / f"{stem}_children.csv")
        if self.event_log is not None:
            write_jsonl(out_dir / "episodes" / f"{stem}_events.jsonl", self.event_log)


def run_episode(
    config: ExperimentConfig,
    strategy: Strategy,
    seed: int,
    record_event_log: Optional[bool] = None,
) -> EpisodeResult:
    """
    One trading session: fundamental path, background population and the
    execution agent working the parent order under `strategy`.

    The path depends on the seed only and background agents are registered
    before the execution agent, so every strategy faces the same fundamental
    and the same agent random streams for a given seed.
    """
    strategy = Strategy(strategy)
    params = config.fundamental.to_params()
    horizon = config.session_seconds
    path = generate_ctmstou_path(params, horizon, config.fundamental.dt, np.random.default_rng(seed))
    oracle = Oracle(path, params.regimes)

    record = config.record_event_log if record_event_log is None else record_event_log
    kernel = Kernel(seed=seed, default_latency_ns=config.latency_ns, record_event_log=record)
    population = build_background_population(config.population, oracle, kernel)
    agent = ExecutionAgent(
        "Execution",
        population.exchange.id,
        oracle,
        config.parent.to_parent(),
        strategy,
        start_offset=config.warmup_seconds,
    )
    kernel.register_agent(agent)

    summary = kernel.run(oracle.horizon_ns)
    metrics = agent.metrics()
    normalized = "n/a" if metrics.normalized_price is None else f"{metrics.normalized_price:.6f}"
    logger.info_print(
        f"seed={seed} {strategy.value}: PctComp={metrics.pct_comp:.4f}, normalized={normalized}, "
        f"{metrics.n_fills} fills, {summary.events_processed} events, {path.trace.switch_count} regime switches"
    )
    return EpisodeResult(
        seed=seed,
        strategy=strategy,
        metrics=metrics,
        summary=summary,
        path=path,
        l1=population.exchange.l1_frame(),
        child_log=agent.child_log_frame(),
        instructions=list(agent.instructions),
        event_log=kernel.event_log,
    )
