import json

import pandas as pd
import pytest
from typer.testing import CliRunner

from regime_market.cli.main_cli import app

runner = CliRunner()

THREE_DAYS = "259200"


def assert_manifest(directory, command):
    manifest = json.loads((directory / "manifest.json").read_text())
    assert manifest["command"] == command
    assert len(manifest["config_hash"]) == 64
    assert {"regime_market", "numpy", "pandas", "scipy", "python"} <= set(manifest["versions"])
    return manifest


@pytest.fixture
def simulated_ohlc(tmp_path):
    out = tmp_path / "fundamental"
    result = runner.invoke(app, ["simulate-fundamental", "--seed", "1", "--horizon", THREE_DAYS,
                                 "--ohlc", "--out", str(out)])
    assert result.exit_code == 0, result.output
    return out / "ohlc.csv"


def test_simulate_fundamental_outputs(simulated_ohlc):
    out = simulated_ohlc.parent
    path = pd.read_csv(out / "path.csv")
    assert list(path.columns) == ["t", "X", "M", "s"]
    assert len(path) == 259_201
    assert list(pd.read_csv(out / "trace.csv").columns) == ["t", "s"]
    assert len(pd.read_csv(simulated_ohlc)) == 3 * 1440
    manifest = assert_manifest(out, "simulate-fundamental")
    assert manifest["seeds"] == [1]
    assert manifest["horizon"] == 259_200


def test_one_folder_per_seed(tmp_path):
    out = tmp_path / "seeds"
    args = ["simulate-fundamental", "--horizon", "600", "--seed", "3", "--seed", "4", "--out", str(out)]
    assert runner.invoke(app, args).exit_code == 0
    assert sorted(p.name for p in out.iterdir()) == ["seed3", "seed4"]
    assert (out / "seed3" / "path.csv").read_bytes() != (out / "seed4" / "path.csv").read_bytes()
    assert assert_manifest(out / "seed4", "simulate-fundamental")["seeds"] == [4]

    again = tmp_path / "again"
    assert runner.invoke(app, args[:-1] + [str(again)]).exit_code == 0
    assert (again / "seed3" / "path.csv").read_bytes() == (out / "seed3" / "path.csv").read_bytes()


def test_parameter_sweep(tmp_path):
    out = tmp_path / "sweep"
    result = runner.invoke(app, ["simulate-fundamental", "--horizon", "600", "--vary", "sigma",
                                 "--values", "0.5,2", "--n-paths", "3", "--fixed-trace", "--out", str(out)])
    assert result.exit_code == 0, result.output
    sweep = pd.read_csv(out / "sweep.csv")
    assert list(sweep.columns) == ["t", "M", "X_sigma=0.5", "X_sigma=2"]
    assert sorted(pd.read_csv(out / "paths.csv")["path"].unique()) == [0, 1, 2]


def test_bad_sweep_values_are_a_usage_error(tmp_path):
    result = runner.invoke(app, ["simulate-fundamental", "--vary", "sigma", "--values", "a,b",
                                 "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_label_writes_one_row_per_day(tmp_path, simulated_ohlc):
    out = tmp_path / "labels"
    result = runner.invoke(app, ["label", str(simulated_ohlc), "--out", str(out)])
    assert result.exit_code == 0, result.output
    labels = pd.read_csv(out / "labels.csv")
    assert list(labels.columns) == ["date", "switch_count", "bars", "missing_fraction"]
    assert labels["date"].tolist() == ["1970-01-01", "1970-01-02", "1970-01-03"]
    assert (labels["switch_count"] >= 0).all()
    assert assert_manifest(out, "label")["ohlc"] == "ohlc.csv"


def test_label_rejects_inverted_windows(tmp_path, simulated_ohlc):
    result = runner.invoke(app, ["label", str(simulated_ohlc), "--tau1", "800", "--out", str(tmp_path)])
    assert result.exit_code == 2


def calibrate(ohlc, out):
    return runner.invoke(app, ["calibrate", str(ohlc), "--method", "exact", "--trials", "5",
                               "--seed", "3", "--out", str(out)])


def test_calibrate_is_reproducible(tmp_path, simulated_ohlc):
    first, second = tmp_path / "a", tmp_path / "b"
    assert calibrate(simulated_ohlc, first).exit_code == 0
    assert calibrate(simulated_ohlc, second).exit_code == 0

    report = json.loads((first / "calibration_report.json").read_text())
    assert report["trials"] == 5
    assert report["method"] == "exact"
    assert report["real_days"] == 3
    assert report["lambda_per_day"] == pytest.approx(report["lambda_per_second"] * 86_400)
    assert len(pd.read_csv(first / "trials.csv")) == 5
    for name in ("calibration_report.json", "trials.csv", "labels.csv",
                 "histogram_real.csv", "histogram_simulated.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    assert assert_manifest(first, "calibrate")["method"] == "exact"
    assert (first / "manifest.json").read_bytes() == (second / "manifest.json").read_bytes()


def test_missing_config_exits_with_error(tmp_path, simulated_ohlc):
    result = runner.invoke(app, ["calibrate", str(simulated_ohlc), "--config", str(tmp_path / "nope.yaml")])
    assert result.exit_code == 1
    assert "not found" in result.output


def test_missing_ohlc_file_exits_with_error(tmp_path):
    result = runner.invoke(app, ["label", str(tmp_path / "nope.csv"), "--out", str(tmp_path)])
    assert result.exit_code == 1


def test_run_market_writes_episode_files(tmp_path, small_experiment_yaml):
    out = tmp_path / "market"
    result = runner.invoke(app, ["run-market", "--config", str(small_experiment_yaml), "--strategy",
                                 "regime_aware_1", "--seed", "4", "--out", str(out)])
    assert result.exit_code == 0, result.output
    metrics = json.loads((out / "episodes" / "regime_aware_1_seed4_metrics.json").read_text())
    assert metrics["strategy"] == "regime_aware_1"
    assert metrics["events_processed"] > 0
    assert (out / "fills" / "regime_aware_1_seed4.csv").is_file()
    assert (out / "l1" / "regime_aware_1_seed4.csv").is_file()
    assert (out / "episodes" / "regime_aware_1_seed4_completion.csv").is_file()
    assert (out / "episodes" / "regime_aware_1_seed4_children.csv").is_file()
    manifest = assert_manifest(out, "run-market")
    assert (manifest["seeds"], manifest["strategy"]) == ([4], "regime_aware_1")


def test_experiment_and_report(tmp_path, small_experiment_yaml):
    out = tmp_path / "experiment"
    result = runner.invoke(app, ["experiment", "--config", str(small_experiment_yaml), "--seeds", "1",
                                 "--seed", "9", "--out", str(out)],
                           env={"COLUMNS": "200"})
    assert result.exit_code == 0, result.output
    assert "Execution strategies" in result.output
    results = pd.read_csv(out / "results.csv")
    assert results["seed"].tolist() == [9] * 4
    assert set(results["strategy"]) == {"full_MO", "full_LO", "regime_aware_0", "regime_aware_1"}
    assert assert_manifest(out, "experiment")["seeds"] == [9]

    report = runner.invoke(app, ["report", str(out)], env={"COLUMNS": "200"})
    assert report.exit_code == 0
    assert "regime_aware_1" in report.output


def test_report_without_results(tmp_path):
    result = runner.invoke(app, ["report", str(tmp_path)])
    assert result.exit_code == 1


def test_report_on_header_only_results(tmp_path):
    (tmp_path / "results.csv").write_text(
        "seed,strategy,pct_comp,wapr,normalized_price,n_fills,regime_switch_count,status\n")
    result = runner.invoke(app, ["report", str(tmp_path)], env={"COLUMNS": "200"})
    assert result.exit_code == 0, result.output
    assert "Execution strategies" in result.output
    assert "full_MO" not in result.output


def test_unwritable_output_directory_is_reported(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    result = runner.invoke(app, ["simulate-fundamental", "--horizon", "60", "--out", str(blocker / "x")])
    assert result.exit_code == 1
    assert not isinstance(result.exception, OSError)
    assert "Failed to create directory" in result.output
