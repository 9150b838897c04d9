from typing import List, Optional

import numpy as np

from regime_market.core.exceptions import InvalidParametersError
from regime_market.schemas.config_schema import CalibrationMethod, FundamentalConfig
from regime_market.schemas.models.calibration_schema import LabelConfig, SwitchCountDistribution
from regime_market.schemas.models.fundamental_schema import (
    SECONDS_PER_DAY,
    CtmstouParams,
    RateMatrix,
    RegimeParams,
)
from regime_market.services.calibration.labeling import label_switch_count
from regime_market.services.sde_engine.ctmc import ctmc_sample_trace
from regime_market.services.sde_engine.processes import bin_path_to_ohlc, generate_ctmstou_path

BAR_SECONDS = 60.0


def default_day_config() -> FundamentalConfig:
    """Bullish/bearish trending OU day used when no day process is configured."""
    return FundamentalConfig(
        regimes=[
            RegimeParams(theta=1.0, mu=0.1, sigma=2.0),
            RegimeParams(theta=1.0, mu=-0.1, sigma=2.0),
        ],
        random_initial_state=True,
    )


def _check_rates(lambda_rate: float, omega_rate: float) -> None:
    for name, value in (("lambda_rate", lambda_rate), ("omega_rate", omega_rate)):
        if value < 0 or not np.isfinite(value):
            raise InvalidParametersError(name, value, "must be finite and non-negative")


def exact_switch_counts(rates: RateMatrix, n_days: int, rng: np.random.Generator,
                        day_seconds: float = SECONDS_PER_DAY) -> List[int]:
    """
    Label changes per day of the regime chain itself, no price path involved.

    When every state has the same total event rate the chain is uniformized:
    the day's events are Poisson and each one changes the label with a fixed
    probability, so counts are drawn in bulk. Otherwise traces are sampled.
    """
    matrix = rates.as_array()
    totals = matrix.sum(axis=1)
    if np.allclose(totals, 0.0):
        return [0] * n_days
    if np.allclose(totals, totals[0]):
        change_probs = 1.0 - np.diag(matrix) / totals
        if np.allclose(change_probs, change_probs[0]):
            events = rng.poisson(float(totals[0]) * day_seconds, size=n_days)
            return rng.binomial(events, float(change_probs[0])).astype(int).tolist()

    counts = []
    for _ in range(n_days):
        s0 = int(rng.integers(rates.dimension))
        counts.append(ctmc_sample_trace(rates, s0, day_seconds, rng).switch_count)
    return counts


def labeled_switch_counts(params: CtmstouParams, n_days: int, rng: np.random.Generator,
                          label_cfg: LabelConfig, dt: float = 1.0,
                          day_seconds: float = SECONDS_PER_DAY) -> List[int]:
    """Simulates each day's price path, bins it to 1-minute opens and labels it."""
    counts = []
    for day_rng in rng.spawn(n_days):
        path = generate_ctmstou_path(params, day_seconds, dt, day_rng)
        bars = bin_path_to_ohlc(path, bar_seconds=BAR_SECONDS)
        counts.append(label_switch_count(bars["open"].to_numpy(), label_cfg))
    return counts


def simulate_switch_distribution(
    lambda_rate: float,
    omega_rate: float,
    n_days: int,
    method: CalibrationMethod,
    rng: np.random.Generator,
    day_config: Optional[FundamentalConfig] = None,
    label_cfg: Optional[LabelConfig] = None,
) -> SwitchCountDistribution:
    """
    Switch-count distribution of `n_days` simulated days under the symmetric
    two-regime chain (lambda on the diagonal, omega off it, events/s).

    `labeled` runs the full day simulation and the moving-average labeler;
    `exact` counts the chain's off-diagonal transitions directly.
    """
    _check_rates(lambda_rate, omega_rate)
    if n_days < 1:
        raise InvalidParametersError("n_days", n_days, "must be at least 1")
    rates = RateMatrix.symmetric(lambda_rate, omega_rate)

    if CalibrationMethod(method) is CalibrationMethod.EXACT:
        return SwitchCountDistribution(exact_switch_counts(rates, n_days, rng))

    day = day_config or default_day_config()
    params = day.to_params().model_copy(update={"rates": rates})
    if params.n_regimes != 2:
        raise InvalidParametersError("day_config.regimes", params.n_regimes, "labeled calibration needs two regimes")
    counts = labeled_switch_counts(params, n_days, rng, label_cfg or LabelConfig(), dt=day.dt)
    return SwitchCountDistribution(counts)
