from pathlib import Path
from typing import List

import numpy as np
import pandas as pd

from regime_market.core.exceptions import CalibrationError, OhlcParseError
from regime_market.schemas.models.calibration_schema import OHLC_COLUMNS, OhlcDay
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("OhlcLoader")

MINUTES_PER_DAY = 1440
# Timestamps above this are taken to be epoch milliseconds
_MILLISECOND_THRESHOLD = 1e11


def _read_frame(path: Path) -> pd.DataFrame:
    if not path.is_file():
        raise CalibrationError(f"OHLC file not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except pd.errors.EmptyDataError as e:
        raise OhlcParseError(path.name, 1, "missing header row") from e
    frame.columns = [str(c).strip().lower() for c in frame.columns]
    missing = [c for c in OHLC_COLUMNS if c not in frame.columns]
    if missing:
        raise OhlcParseError(path.name, 1, f"missing columns {missing}")
    return frame[list(OHLC_COLUMNS)]


def _parse_numbers(frame: pd.DataFrame, file_name: str) -> pd.DataFrame:
    parsed = frame.apply(pd.to_numeric, errors="coerce")
    bad = parsed.isna().any(axis=1) | ~np.isfinite(parsed.to_numpy(dtype=float)).all(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        raise OhlcParseError(file_name, row + 2, f"non-numeric value in {frame.iloc[row].tolist()}")

    ts = parsed["timestamp"].to_numpy(dtype=float)
    ts = np.where(ts > _MILLISECOND_THRESHOLD, ts // 1000, ts)
    parsed["timestamp"] = ts.astype(np.int64)
    return parsed


def _validate_rows(frame: pd.DataFrame, file_name: str) -> None:
    checks = [
        (frame["low"] > frame["high"], "low > high"),
        ((frame["open"] < frame["low"]) | (frame["open"] > frame["high"]), "open outside [low, high]"),
        ((frame["close"] < frame["low"]) | (frame["close"] > frame["high"]), "close outside [low, high]"),
        (frame["volume"] < 0, "negative volume"),
        (frame["timestamp"].diff() <= 0, "timestamps not strictly increasing"),
    ]
    for mask, message in checks:
        hits = np.flatnonzero(mask.to_numpy())
        if hits.size:
            raise OhlcParseError(file_name, int(hits[0]) + 2, message)


def load_ohlc_csv(path: Path, max_missing_fraction: float = 0.1) -> List[OhlcDay]:
    """
    Reads a minute-bar OHLC CSV and splits it into UTC calendar days.

    Header names are case-insensitive; timestamps are epoch seconds (or
    milliseconds). A malformed row raises OhlcParseError with its line
    number. Days missing more than `max_missing_fraction` of their 1440
    minutes are dropped with a warning.
    """
    path = Path(path)
    frame = _parse_numbers(_read_frame(path), path.name)
    _validate_rows(frame, path.name)

    dates = pd.to_datetime(frame["timestamp"], unit="s", utc=True).dt.date
    days: List[OhlcDay] = []
    for date, day_frame in frame.groupby(dates, sort=True):
        missing = max(0.0, 1.0 - len(day_frame) / MINUTES_PER_DAY)
        if missing > max_missing_fraction:
            logger.warning_print(
                f"Excluding {date}: {missing:.1%} of minutes missing (limit {max_missing_fraction:.1%})"
            )
            continue
        days.append(OhlcDay(date=date, frame=day_frame.reset_index(drop=True), missing_fraction=missing))

    logger.info_print(f"Loaded {len(days)} days from {path.name} ({len(frame)} bars)")
    return days
