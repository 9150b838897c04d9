import typer

from regime_market.cli.commands import calibration, fundamental, market

app = typer.Typer(
    name="regime-market",
    help="Regime-switching market simulator: fundamentals, calibration and TWAP execution experiments.",
    no_args_is_help=True,
    add_completion=False,
)

app.command("simulate-fundamental")(fundamental.simulate_fundamental_command)
app.command("label")(calibration.label_command)
app.command("calibrate")(calibration.calibrate_command)
app.command("run-market")(market.run_market_command)
app.command("experiment")(market.experiment_command)
app.command("report")(market.report_command)
