from regime_market.services.calibration.calibrator import calibrate_rates, draw_log_uniform
from regime_market.services.calibration.distance import wasserstein_1d
from regime_market.services.calibration.labeling import (
    LABEL_COLUMNS,
    label_switch_count,
    labeling_frame,
)
from regime_market.services.calibration.ohlc_loader import MINUTES_PER_DAY, load_ohlc_csv
from regime_market.services.calibration.switch_distribution import (
    default_day_config,
    exact_switch_counts,
    labeled_switch_counts,
    simulate_switch_distribution,
)

__all__ = [
    "LABEL_COLUMNS",
    "MINUTES_PER_DAY",
    "calibrate_rates",
    "default_day_config",
    "draw_log_uniform",
    "exact_switch_counts",
    "label_switch_count",
    "labeled_switch_counts",
    "labeling_frame",
    "load_ohlc_csv",
    "simulate_switch_distribution",
    "wasserstein_1d",
]
