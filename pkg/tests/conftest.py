import numpy as np
import pytest

from regime_market.schemas.models.fundamental_schema import (
    CtmstouParams,
    RateMatrix,
    RegimeParams,
)


@pytest.fixture
def up_down_regimes():
    return [
        RegimeParams(theta=1.0, mu=10.0, sigma=2.0),
        RegimeParams(theta=1.0, mu=-10.0, sigma=2.0),
    ]


@pytest.fixture
def hourly_rates():
    # (1/3600) [[1/2, 1/5], [1/5, 1/2]] events per second
    return RateMatrix(entries=[[0.5 / 3600, 0.2 / 3600], [0.2 / 3600, 0.5 / 3600]])


@pytest.fixture
def switching_params(up_down_regimes, hourly_rates):
    return CtmstouParams(regimes=up_down_regimes, rates=hourly_rates, x0=10_000.0, m0=10_000.0)


@pytest.fixture
def single_regime_params():
    return CtmstouParams(
        regimes=[RegimeParams(theta=1.0, mu=0.0, sigma=2.0)],
        rates=RateMatrix(entries=[[0.0]]),
        x0=100.0,
        m0=100.0,
    )


@pytest.fixture
def make_rng():
    return lambda seed=0: np.random.default_rng(seed)


@pytest.fixture
def small_experiment_config():
    """A 20-minute session with a thin population, fast enough for unit tests."""
    from regime_market.schemas.config_schema import ExperimentConfig

    return ExperimentConfig.model_validate({
        "seeds": [1, 2],
        "warmup_seconds": 60,
        "fundamental": {
            "regimes": [{"theta": 1.0, "mu": 0.1, "sigma": 2.0}, {"theta": 1.0, "mu": -0.1, "sigma": 2.0}],
            "lambda_per_day": 40.0,
            "omega_per_day": 20.0,
            "random_initial_state": True,
        },
        "population": {
            "market_maker": {"count": 1, "wake_interval": 10.0, "levels": 3, "size": 50},
            "value": {"count": 5, "wake_rate": 0.05, "order_size": 10, "noise_sigma": 20.0},
            "momentum": {"count": 2, "wake_rate": 0.05, "order_size": 10},
            "noise": {"count": 20, "wake_rate": 0.02},
        },
        "parent": {"Q": 200, "T": 1200, "tau": 60, "k": 5},
    })


@pytest.fixture
def small_experiment_yaml(tmp_path, small_experiment_config):
    import yaml

    path = tmp_path / "experiment.yaml"
    path.write_text(yaml.safe_dump(small_experiment_config.model_dump(mode="json")))
    return path
