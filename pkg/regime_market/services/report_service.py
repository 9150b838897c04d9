from pathlib import Path

import pandas as pd
from rich.console import Console
from rich.table import Table

from regime_market.core.exceptions import RegimeMarketError
from regime_market.services.experiment_service import summarize
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("ReportService")


def load_results(results_dir: Path) -> pd.DataFrame:
    path = Path(results_dir) / "results.csv"
    if not path.is_file():
        raise RegimeMarketError(f"No experiment results at {path}")
    return pd.read_csv(path)


def _fmt(value, digits: int) -> str:
    return "-" if pd.isna(value) else f"{value:.{digits}f}"


def strategy_table(results: pd.DataFrame) -> Table:
    """Per-strategy table ordered by mean normalized price, cheapest first."""
    summary = summarize(results).sort_values("mean_normalized_price", na_position="last", kind="mergesort")
    table = Table(title="Execution strategies")
    for header in ("Strategy", "Episodes", "Failed", "PctComp", "WAPr", "Normalized price", "Std", "Switches"):
        if header == "Strategy":
            table.add_column(header, no_wrap=True)
        else:
            table.add_column(header, justify="right")
    for row in summary.itertuples(index=False):
        table.add_row(
            row.strategy,
            str(row.episodes),
            str(row.failed),
            "-" if pd.isna(row.mean_pct_comp) else f"{100.0 * row.mean_pct_comp:.2f}%",
            _fmt(row.mean_wapr, 2),
            _fmt(row.mean_normalized_price, 6),
            _fmt(row.std_normalized_price, 6),
            _fmt(row.mean_regime_switches, 2),
        )
    return table


def print_report(results_dir: Path, console: Console = None) -> pd.DataFrame:
    results = load_results(results_dir)
    console = console or Console()
    console.print(strategy_table(results))
    logger.info_print(f"Report built from {len(results)} episodes in {results_dir}")
    return results
