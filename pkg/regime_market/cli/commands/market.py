from pathlib import Path
from typing import Optional

import typer

from regime_market.cli.commands.common import command_errors, output_dir
from regime_market.core.config import initialize_output_directories, settings
from regime_market.schemas.config_schema import load_experiment_config
from regime_market.schemas.models.execution_schema import Strategy
from regime_market.services.experiment_service import run_experiment
from regime_market.services.manifest_service import write_manifest
from regime_market.services.market_service import run_episode
from regime_market.services.report_service import print_report
from regime_market.utils.file_utils import write_frame, write_json


def run_market_command(
    strategy: Strategy = typer.Option(Strategy.FULL_MO, "--strategy"),
    seed: int = typer.Option(0, "--seed"),
    config: Optional[Path] = typer.Option(None, "--config", help="Experiment YAML."),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory."),
    event_log: bool = typer.Option(False, "--event-log", help="Also write the kernel event log."),
):
    """Run one market session with the execution agent."""
    with command_errors("run-market"):
        experiment = load_experiment_config(config or settings.EXPERIMENT_CONFIG_PATH)
        out_dir = initialize_output_directories(output_dir(out, "market"))
        result = run_episode(experiment, strategy, seed, record_event_log=event_log or None)
        result.write(out_dir)
        stem = f"{result.strategy.value}_seed{seed}"
        write_frame(result.completion_frame(), out_dir / "episodes" / f"{stem}_completion.csv")
        write_json(out_dir / "episodes" / f"{stem}_metrics.json", {
            **result.as_row(),
            "events_processed": result.summary.events_processed,
        })
        write_manifest(out_dir, "run-market", experiment, [seed], strategy=result.strategy.value)
        typer.echo(
            f"{result.strategy.value} seed={seed}: PctComp={result.metrics.pct_comp:.4f}, "
            f"WAPr={result.metrics.wapr}, normalized={result.metrics.normalized_price} -> {out_dir}"
        )


def experiment_command(
    config: Optional[Path] = typer.Option(None, "--config", help="Experiment YAML."),
    seeds: Optional[int] = typer.Option(None, "--seeds", min=1, help="Number of seeds, replaces the config's."),
    seed: Optional[int] = typer.Option(None, "--seed", help="First seed, replaces the config's."),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory."),
):
    """Run every strategy over every seed and write the comparison tables."""
    with command_errors("experiment"):
        experiment = load_experiment_config(config or settings.EXPERIMENT_CONFIG_PATH)
        overrides = {}
        if seeds is not None:
            overrides.update(n_seeds=seeds, seeds=None)
        if seed is not None:
            overrides.update(base_seed=seed, seeds=None)
        experiment = experiment.model_copy(update=overrides)
        out_dir = output_dir(out or experiment.output_dir, "experiment")
        run_experiment(experiment, out_dir, workers=workers)
        print_report(out_dir)


def report_command(
    results_dir: Path = typer.Argument(..., help="Directory holding results.csv."),
):
    """Print the per-strategy comparison of an experiment."""
    with command_errors("report"):
        print_report(results_dir)
