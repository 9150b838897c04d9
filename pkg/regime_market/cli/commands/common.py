from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

import typer

from regime_market.core.config import settings
from regime_market.core.exceptions import RegimeMarketError
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("CLI")


@contextmanager
def command_errors(command: str) -> Iterator[None]:
    """Turns package errors into a logged diagnostic and exit code 1."""
    try:
        yield
    except RegimeMarketError as e:
        logger.error_print(f"{command} failed: {e}")
        raise typer.Exit(code=1)
    except OSError as e:
        logger.error_print(f"{command} failed: {e.strerror or e} ({e.filename})")
        raise typer.Exit(code=1)


def output_dir(out: Optional[Path], command: str) -> Path:
    return Path(out) if out is not None else settings.OUTPUT_DIR / command


def parse_values(raw: Optional[str]) -> Optional[List[float]]:
    """'0.5,1,2' -> [0.5, 1.0, 2.0]."""
    if raw is None:
        return None
    try:
        return [float(v) for v in raw.split(",") if v.strip()]
    except ValueError as e:
        raise typer.BadParameter(f"expected comma-separated numbers, got {raw!r}") from e
