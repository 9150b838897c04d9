import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from regime_market.core.config import initialize_output_directories, settings
from regime_market.core.exceptions import RegimeMarketError
from regime_market.schemas.config_schema import ExperimentConfig
from regime_market.schemas.models.execution_schema import Strategy
from regime_market.services.manifest_service import write_manifest
from regime_market.services.market_service import RESULT_COLUMNS, run_episode
from regime_market.utils.CustomLogger import CustomLogger
from regime_market.utils.file_utils import write_frame

logger = CustomLogger("ExperimentService")

DENSITY_BINS = 20
DENSITY_COLUMNS = ("strategy", "bin_left", "bin_right", "count", "density")
SUMMARY_COLUMNS = (
    "strategy",
    "episodes",
    "failed",
    "mean_pct_comp",
    "std_pct_comp",
    "mean_wapr",
    "mean_normalized_price",
    "std_normalized_price",
    "mean_regime_switches",
)


@dataclass(frozen=True)
class _EpisodeTask:
    config: ExperimentConfig
    strategy: Strategy
    seed: int
    out_dir: Optional[Path]


def _run_task(task: _EpisodeTask) -> dict:
    # Module-level so it pickles into worker processes
    try:
        result = run_episode(task.config, task.strategy, task.seed)
    except RegimeMarketError as e:
        logger.error_print(f"Episode seed={task.seed} {task.strategy.value} failed: {e}")
        row = {column: None for column in RESULT_COLUMNS}
        row.update(seed=task.seed, strategy=task.strategy.value, status=f"failed: {e}")
        return row
    if task.out_dir is not None:
        result.write(task.out_dir)
    return result.as_row()


def _tasks(config: ExperimentConfig, out_dir: Optional[Path]) -> List[_EpisodeTask]:
    strategies = sorted(set(config.strategies), key=lambda s: s.value)
    return [
        _EpisodeTask(config, strategy, seed, out_dir)
        for strategy in strategies
        for seed in sorted(set(config.seed_list()))
    ]


def run_experiment(
    config: ExperimentConfig,
    out_dir: Optional[Path] = None,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """
    Runs every (strategy, seed) episode of `config` and returns one row per
    episode, sorted by strategy then seed.

    With `out_dir` the per-episode fills and L1 streams, results.csv, the
    summary, density and scatter tables and manifest.json are written there.
    Failed episodes stay in the table with a `failed: ...` status.
    """
    workers = workers or settings.WORKERS
    if out_dir is not None:
        initialize_output_directories(Path(out_dir))
    tasks = _tasks(config, out_dir)
    logger.info_print(
        f"Running {len(tasks)} episodes ({len(config.seed_list())} seeds x "
        f"{len(set(config.strategies))} strategies) with {workers} worker(s)"
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_task, tasks))
    else:
        rows = [_run_task(task) for task in tasks]

    results = pd.DataFrame(rows, columns=list(RESULT_COLUMNS))
    results = results.sort_values(["strategy", "seed"], kind="mergesort").reset_index(drop=True)
    failed = int((results["status"] != "ok").sum())
    if failed:
        logger.warning_print(f"{failed} of {len(results)} episodes failed")

    if out_dir is not None:
        write_experiment_outputs(config, results, Path(out_dir))
    return results


def summarize(results: pd.DataFrame) -> pd.DataFrame:
    """Per-strategy means and standard deviations over successful episodes."""
    rows = []
    for strategy, group in results.groupby("strategy", sort=True):
        ok = group[group["status"] == "ok"]
        pct = ok["pct_comp"].astype(float)
        normalized = ok["normalized_price"].astype(float)
        rows.append({
            "strategy": strategy,
            "episodes": len(group),
            "failed": len(group) - len(ok),
            "mean_pct_comp": pct.mean(),
            "std_pct_comp": pct.std(),
            "mean_wapr": ok["wapr"].astype(float).mean(),
            "mean_normalized_price": normalized.mean(),
            "std_normalized_price": normalized.std(),
            "mean_regime_switches": ok["regime_switch_count"].astype(float).mean(),
        })
    return pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))


def density_table(results: pd.DataFrame, column: str, bins: int = DENSITY_BINS) -> pd.DataFrame:
    """
    Histogram of `column` per strategy on bins shared by every strategy, so
    the densities can be overlaid.
    """
    values = results.loc[results["status"] == "ok", column].astype(float).dropna()
    if values.empty:
        return pd.DataFrame(columns=list(DENSITY_COLUMNS))
    low, high = float(values.min()), float(values.max())
    if math.isclose(low, high):
        low, high = low - 0.5e-6 * max(1.0, abs(low)), high + 0.5e-6 * max(1.0, abs(high))
    edges = np.linspace(low, high, bins + 1)

    frames = []
    for strategy, group in results.groupby("strategy", sort=True):
        sample = group.loc[group["status"] == "ok", column].astype(float).dropna()
        counts, _ = np.histogram(sample, bins=edges)
        density = counts / (counts.sum() * np.diff(edges)) if counts.sum() else np.zeros(bins)
        frames.append(pd.DataFrame({
            "strategy": strategy,
            "bin_left": edges[:-1],
            "bin_right": edges[1:],
            "count": counts,
            "density": density,
        }))
    return pd.concat(frames, ignore_index=True)[list(DENSITY_COLUMNS)]


def scatter_table(results: pd.DataFrame) -> pd.DataFrame:
    ok = results[results["status"] == "ok"]
    return ok[["strategy", "seed", "pct_comp", "wapr", "normalized_price"]].reset_index(drop=True)


def write_experiment_outputs(config: ExperimentConfig, results: pd.DataFrame, out_dir: Path) -> Tuple[Path, ...]:
    written = (
        write_frame(results, out_dir / "results.csv"),
        write_frame(summarize(results), out_dir / "summary.csv"),
        write_frame(density_table(results, "normalized_price"), out_dir / "density_price.csv"),
        write_frame(density_table(results, "pct_comp"), out_dir / "density_pct.csv"),
        write_frame(scatter_table(results), out_dir / "scatter.csv"),
        write_manifest(out_dir, "experiment", config, config.seed_list(),
                       strategies=sorted({s.value for s in config.strategies})),
    )
    logger.info_print(f"Experiment outputs written to {out_dir}")
    return written
