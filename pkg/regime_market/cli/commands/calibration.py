from pathlib import Path
from typing import Optional

import typer

from regime_market.cli.commands.common import command_errors, output_dir
from regime_market.core.config import settings
from regime_market.schemas.config_schema import CalibrationMethod, load_calibration_config
from regime_market.schemas.models.calibration_schema import LabelConfig
from regime_market.services.calibration_service import label_ohlc, run_calibration
from regime_market.services.manifest_service import write_manifest


def label_command(
    ohlc_csv: Path = typer.Argument(..., help="Minute OHLC CSV (timestamp, open, high, low, close, volume)."),
    config: Optional[Path] = typer.Option(None, "--config", help="Calibration YAML providing the label settings."),
    tau1: Optional[int] = typer.Option(None, "--tau1", help="Short window [minutes]."),
    tau2: Optional[int] = typer.Option(None, "--tau2", help="Long window [minutes]."),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Band rescaling."),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory."),
):
    """Count regime switches per day of real OHLC data."""
    with command_errors("label"):
        calibration = load_calibration_config(config or settings.CALIBRATION_CONFIG_PATH)
        overrides = {k: v for k, v in (("tau1", tau1), ("tau2", tau2), ("alpha", alpha)) if v is not None}
        try:
            label_cfg = LabelConfig.model_validate({**calibration.label.model_dump(), **overrides})
        except ValueError as e:
            raise typer.BadParameter(str(e)) from e
        out_path = output_dir(out, "label") / "labels.csv"
        table = label_ohlc(ohlc_csv, label_cfg, calibration.max_missing_fraction, out_path)
        write_manifest(out_path.parent, "label", calibration.model_copy(update={"label": label_cfg}), [],
                       ohlc=Path(ohlc_csv).name)
        typer.echo(f"{len(table)} days labeled, {int(table['switch_count'].sum())} switches -> {out_path}")


def calibrate_command(
    ohlc_csv: Path = typer.Argument(..., help="Minute OHLC CSV of the real market."),
    config: Optional[Path] = typer.Option(None, "--config", help="Calibration YAML."),
    trials: Optional[int] = typer.Option(None, "--trials", min=1),
    seed: Optional[int] = typer.Option(None, "--seed"),
    method: Optional[CalibrationMethod] = typer.Option(None, "--method", case_sensitive=False),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory."),
):
    """Fit the regime switching rates (lambda, omega) to real OHLC data."""
    with command_errors("calibrate"):
        calibration = load_calibration_config(config or settings.CALIBRATION_CONFIG_PATH)
        out_dir = output_dir(out, "calibration")
        result = run_calibration(ohlc_csv, calibration, out_dir, trials=trials, seed=seed,
                                 method=method, workers=workers)
        typer.echo(
            f"lambda = {result.lambda_rate:.6g} /s ({result.lambda_per_day:.4g} /day), "
            f"omega = {result.omega_rate:.6g} /s ({result.omega_per_day:.4g} /day), "
            f"distance = {result.distance:.6g} over {result.trials} trials -> {out_dir}"
        )
