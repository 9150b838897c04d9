from typing import Sequence

import numpy as np
import pandas as pd

from regime_market.core.exceptions import CalibrationError
from regime_market.schemas.models.calibration_schema import LabelConfig

LABEL_COLUMNS = ("open", "ma_short", "ma_long", "std_short", "x", "switch")

# Relative size below which the short-window std counts as zero
_FLAT_STD_TOLERANCE = 1e-9


def _band_signal(opens: pd.Series, cfg: LabelConfig) -> pd.DataFrame:
    ma_short = opens.rolling(cfg.tau1, min_periods=1).mean()
    ma_long = opens.rolling(cfg.tau2, min_periods=1).mean()
    std_short = opens.rolling(cfg.tau1, min_periods=2).std()

    flat = std_short.isna() | (std_short <= _FLAT_STD_TOLERANCE * ma_short.abs())
    x = (ma_long - ma_short) / (cfg.alpha * std_short.where(~flat, 1.0))
    x = x.where(~flat, 0.0)
    return pd.DataFrame({
        "open": opens,
        "ma_short": ma_short,
        "ma_long": ma_long,
        "std_short": std_short,
        "x": x,
    })


def _crossings(x: np.ndarray) -> np.ndarray:
    switch = np.zeros(len(x), dtype=bool)
    outside = np.flatnonzero(np.abs(x) > 1.0)
    if outside.size == 0:
        return switch
    # The first exit from the neutral band fixes the starting regime
    first = int(outside[0])
    x_ref = x[first:-1]
    x_t = x[first + 1:]
    switch[first + 1:] = ((x_ref > -1.0) & (x_t < -1.0)) | ((x_ref < 1.0) & (x_t > 1.0))
    return switch


def labeling_frame(opens: Sequence[float], cfg: LabelConfig) -> pd.DataFrame:
    """
    Dual moving-average labeling of one day of 1-minute opens.

    x = (MA_long - MA_short) / (alpha * STD_short), with windows of tau2 and
    tau1 bars that expand from the start of the day. A switch is flagged
    whenever x leaves the neutral band [-1, 1]: from above -1 to below -1 or
    from below 1 to above 1, comparing each bar against the previous one.
    """
    values = np.asarray(opens, dtype=float)
    if values.ndim != 1:
        raise CalibrationError(f"expected a 1-D series of opens, got shape {values.shape}")
    if len(values) <= cfg.tau2:
        raise CalibrationError(
            f"labeling needs more than tau2={cfg.tau2} bars, got {len(values)}"
        )
    if not np.all(np.isfinite(values)):
        raise CalibrationError("open prices must be finite")

    frame = _band_signal(pd.Series(values), cfg)
    frame["switch"] = _crossings(frame["x"].to_numpy())
    return frame[list(LABEL_COLUMNS)]


def label_switch_count(opens: Sequence[float], cfg: LabelConfig) -> int:
    """
    Number of regime switches in one day of opens.

    Counting starts at the first bar where |x| > 1: that exit only fixes the
    starting regime and is not counted. Each later exit from the band, up
    through 1 or down through -1, counts as one switch.
    """
    return int(labeling_frame(opens, cfg)["switch"].sum())
