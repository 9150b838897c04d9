from dataclasses import asdict
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from regime_market.core.config import settings
from regime_market.core.exceptions import EmptySampleError
from regime_market.schemas.config_schema import CalibrationConfig, CalibrationMethod, config_hash
from regime_market.schemas.models.calibration_schema import (
    CalibrationResult,
    LabelConfig,
    OhlcDay,
    SwitchCountDistribution,
)
from regime_market.services.calibration import calibrate_rates, label_switch_count, load_ohlc_csv
from regime_market.services.manifest_service import write_manifest
from regime_market.utils.CustomLogger import CustomLogger
from regime_market.utils.file_utils import ensure_dir, write_frame, write_json

logger = CustomLogger("CalibrationService")

LABEL_TABLE_COLUMNS = ("date", "switch_count", "bars", "missing_fraction")


def label_days(days: List[OhlcDay], label_cfg: LabelConfig) -> pd.DataFrame:
    """Switch count of every day, labeled independently."""
    rows = [
        {
            "date": str(day.date),
            "switch_count": label_switch_count(day.opens, label_cfg),
            "bars": len(day),
            "missing_fraction": day.missing_fraction,
        }
        for day in days
    ]
    return pd.DataFrame(rows, columns=list(LABEL_TABLE_COLUMNS))


def label_ohlc(ohlc_path: Path, label_cfg: LabelConfig, max_missing_fraction: float = 0.1,
               out_path: Optional[Path] = None) -> pd.DataFrame:
    days = load_ohlc_csv(Path(ohlc_path), max_missing_fraction=max_missing_fraction)
    table = label_days(days, label_cfg)
    if out_path is not None:
        write_frame(table, Path(out_path))
        logger.info_print(f"Per-day switch counts written to {out_path}")
    return table


def _histograms(real: SwitchCountDistribution, simulated: SwitchCountDistribution) -> Dict[str, pd.DataFrame]:
    top = max(max(real.counts, default=0), max(simulated.counts, default=0))
    return {
        "histogram_real.csv": real.histogram(top),
        "histogram_simulated.csv": simulated.histogram(top),
    }


def write_calibration_outputs(config: CalibrationConfig, result: CalibrationResult,
                              real: SwitchCountDistribution, labels: pd.DataFrame, out_dir: Path) -> None:
    ensure_dir(out_dir)
    report = result.report()
    report.update(
        method=config.method.value,
        real_days=len(real),
        config_hash=config_hash(config),
        config_version=config.config_version,
    )
    write_json(out_dir / "calibration_report.json", report)
    write_frame(labels, out_dir / "labels.csv")
    write_frame(pd.DataFrame([asdict(t) for t in result.history]), out_dir / "trials.csv")
    for name, frame in _histograms(real, result.simulated).items():
        write_frame(frame, out_dir / name)
    write_manifest(out_dir, "calibrate", config, [config.seed], method=config.method.value)
    logger.info_print(f"Calibration outputs written to {out_dir}")


def run_calibration(
    ohlc_path: Path,
    config: CalibrationConfig,
    out_dir: Optional[Path] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    method: Optional[CalibrationMethod] = None,
    workers: Optional[int] = None,
) -> CalibrationResult:
    """
    Labels the real days of `ohlc_path`, then fits (lambda, omega) to their
    switch-count distribution. Command-line overrides replace the matching
    config fields before anything runs, so the written config hash matches
    what was executed.
    """
    overrides = {
        key: value
        for key, value in (("trials", trials), ("seed", seed), ("method", CalibrationMethod(method) if method else None))
        if value is not None
    }
    config = config.model_copy(update=overrides)

    labels = label_ohlc(ohlc_path, config.label, config.max_missing_fraction)
    if labels.empty:
        raise EmptySampleError(f"no usable days in {Path(ohlc_path).name}")
    real = SwitchCountDistribution(labels["switch_count"].astype(int).tolist())
    logger.info_print(f"Real distribution: {len(real)} days, mean {real.mean:.3f} switches/day")

    result = calibrate_rates(
        real,
        trials=config.trials,
        seed=config.seed,
        method=config.method,
        n_days=config.n_sim_days,
        day_config=config.day,
        label_cfg=config.label,
        search_low=config.search_low,
        search_high=config.search_high,
        workers=workers or settings.WORKERS,
    )
    if out_dir is not None:
        write_calibration_outputs(config, result, real, labels, Path(out_dir))
    return result
