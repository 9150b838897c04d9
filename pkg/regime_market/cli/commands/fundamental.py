from pathlib import Path
from typing import List, Optional

import typer

from regime_market.cli.commands.common import command_errors, output_dir, parse_values
from regime_market.core.config import settings
from regime_market.schemas.config_schema import load_experiment_config
from regime_market.schemas.models.fundamental_schema import SECONDS_PER_DAY
from regime_market.services.fundamental_service import simulate_fundamental


def simulate_fundamental_command(
    config: Optional[Path] = typer.Option(None, "--config", help="Experiment YAML; its `fundamental` section is used."),
    seeds: List[int] = typer.Option([0], "--seed", help="Repeat for several seeds, one sub-folder each."),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory."),
    horizon: float = typer.Option(SECONDS_PER_DAY, "--horizon", help="Path length [s]."),
    n_paths: int = typer.Option(1, "--n-paths", help="Extra sample paths written to paths.csv."),
    fixed_trace: bool = typer.Option(False, "--fixed-trace", help="Extra paths share the first path's regimes."),
    vary: Optional[str] = typer.Option(None, "--vary", help="theta or sigma."),
    values: Optional[str] = typer.Option(None, "--values", help="Comma-separated values for --vary."),
    ohlc: bool = typer.Option(False, "--ohlc", help="Also write 1-minute OHLC bars."),
):
    """Simulate the regime-switching fundamental and write it as CSV."""
    with command_errors("simulate-fundamental"):
        experiment = load_experiment_config(config or settings.EXPERIMENT_CONFIG_PATH)
        base = output_dir(out, "fundamental")
        swept = parse_values(values)
        unique = list(dict.fromkeys(seeds))
        for seed in unique:
            written = simulate_fundamental(
                experiment.fundamental,
                horizon,
                seed,
                base if len(unique) == 1 else base / f"seed{seed}",
                n_paths=n_paths,
                fixed_trace=fixed_trace,
                vary=vary,
                values=swept,
                ohlc=ohlc,
            )
            for name, path in written.items():
                typer.echo(f"seed {seed} {name}: {path}")
