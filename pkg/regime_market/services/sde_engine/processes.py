from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from regime_market.core.exceptions import InvalidParametersError
from regime_market.schemas.models.calibration_schema import OHLC_COLUMNS
from regime_market.schemas.models.fundamental_schema import (
    CtmstouParams,
    FundamentalPath,
    RegimeTrace,
)
from regime_market.services.sde_engine.center import center_series, regime_state_series
from regime_market.services.sde_engine.ctmc import ctmc_sample_trace
from regime_market.services.sde_engine.solver import (
    euler_maruyama_step,
    integrate_mean_reverting,
    split_streams,
    time_grid,
    wiener_increments,
)

SWEEPABLE_FIELDS = ("theta", "sigma")


def _check_non_negative(**values):
    for name, value in values.items():
        if value < 0:
            raise InvalidParametersError(name, value, "must be non-negative")


def generate_ctmstou_path(
    params: CtmstouParams,
    horizon: float,
    dt: float,
    rng: np.random.Generator,
    trace: Optional[RegimeTrace] = None,
) -> FundamentalPath:
    """
    Samples one fundamental path of the switching trending OU process.

    A regime trace is drawn from the regime stream (unless one is injected),
    the center series is integrated exactly from it, and X is solved with
    Euler-Maruyama on the diffusion stream. Deterministic given a freshly
    seeded `rng`.
    """
    regime_rng, diffusion_rng = split_streams(rng)
    grid = time_grid(horizon, dt)

    if trace is None:
        s0 = params.s0
        if params.random_initial_state:
            s0 = int(regime_rng.integers(params.n_regimes))
        trace = ctmc_sample_trace(params.rates, s0, horizon, regime_rng, n_regimes=params.n_regimes)

    centers = center_series(trace, params.regimes, params.m0, grid)
    states = regime_state_series(trace, grid)
    theta = np.array([r.theta for r in params.regimes])[states]
    sigma = np.array([r.sigma for r in params.regimes])[states]

    dW = wiener_increments(diffusion_rng, len(grid) - 1, dt)
    values = integrate_mean_reverting(params.x0, theta, centers, sigma, dt, dW)
    return FundamentalPath(dt=dt, values=values, centers=centers, states=states, trace=trace)


def generate_ou_path(theta: float, mu: float, sigma: float, x0: float,
                     horizon: float, dt: float, rng: np.random.Generator) -> np.ndarray:
    _check_non_negative(theta=theta, sigma=sigma)
    _, diffusion_rng = split_streams(rng)
    grid = time_grid(horizon, dt)
    n = len(grid)
    dW = wiener_increments(diffusion_rng, n - 1, dt)
    return integrate_mean_reverting(x0, np.full(n, theta), np.full(n, mu), np.full(n, sigma), dt, dW)


def generate_tou_path(theta: float, mu: float, lambda_trend: float, sigma: float, x0: float,
                      horizon: float, dt: float, rng: np.random.Generator) -> np.ndarray:
    """Trending OU: Y_t = X_t - lambda*t is a plain OU process."""
    detrended = generate_ou_path(theta, mu, sigma, x0, horizon, dt, rng)
    return detrended + lambda_trend * time_grid(horizon, dt)


def generate_fou_path(theta: float, f: Callable[[float], float], sigma: float, x0: float,
                      horizon: float, dt: float, rng: np.random.Generator) -> np.ndarray:
    """OU process reverting to the deterministic center f(t)."""
    _check_non_negative(theta=theta, sigma=sigma)
    _, diffusion_rng = split_streams(rng)
    grid = time_grid(horizon, dt)
    n = len(grid)
    centers = np.array([f(t) for t in grid], dtype=float)
    dW = wiener_increments(diffusion_rng, n - 1, dt)
    return integrate_mean_reverting(x0, np.full(n, theta), centers, np.full(n, sigma), dt, dW)


def gbm_exact_path(s0: float, mu: float, sigma: float, horizon: float, dt: float,
                   rng: np.random.Generator) -> np.ndarray:
    """Analytic GBM S_t = S_0 exp(sigma W_t + (mu - sigma^2 / 2) t) on the solver's increments."""
    if s0 <= 0:
        raise InvalidParametersError("s0", s0, "must be positive")
    _check_non_negative(sigma=sigma)
    _, diffusion_rng = split_streams(rng)
    grid = time_grid(horizon, dt)
    dW = wiener_increments(diffusion_rng, len(grid) - 1, dt)
    W = np.concatenate(([0.0], np.cumsum(dW)))
    return s0 * np.exp(sigma * W + (mu - 0.5 * sigma ** 2) * grid)


def euler_gbm_path(s0: float, mu: float, sigma: float, horizon: float, dt: float,
                   rng: np.random.Generator) -> np.ndarray:
    """Euler-Maruyama solution of dS = mu S dt + sigma S dW, same increments as gbm_exact_path."""
    if s0 <= 0:
        raise InvalidParametersError("s0", s0, "must be positive")
    _check_non_negative(sigma=sigma)
    _, diffusion_rng = split_streams(rng)
    grid = time_grid(horizon, dt)
    dW = wiener_increments(diffusion_rng, len(grid) - 1, dt)
    out = np.empty(len(grid))
    x = float(s0)
    out[0] = x
    for n, dw in enumerate(dW.tolist()):
        x = euler_maruyama_step(x, mu * x, sigma * x, dt, dw)
        out[n + 1] = x
    return out


def generate_paths_for_trace(params: CtmstouParams, trace: RegimeTrace, n_paths: int,
                             horizon: float, dt: float,
                             rng: np.random.Generator) -> List[FundamentalPath]:
    """Several independent sample paths around one fixed center series."""
    return [
        generate_ctmstou_path(params, horizon, dt, child, trace=trace)
        for child in rng.spawn(n_paths)
    ]


def parameter_sweep(params: CtmstouParams, field: str, values: Sequence[float],
                    horizon: float, dt: float, seed: int) -> Dict[float, FundamentalPath]:
    """
    One path per value of `field` (theta or sigma) applied to every regime.

    All paths share the regime trace and the Wiener increments, so they differ
    only through the swept parameter.
    """
    if field not in SWEEPABLE_FIELDS:
        raise InvalidParametersError("field", field, f"must be one of {SWEEPABLE_FIELDS}")
    paths = {}
    for value in values:
        regimes = [r.model_copy(update={field: float(value)}) for r in params.regimes]
        swept = CtmstouParams.model_validate({**params.model_dump(), "regimes": [r.model_dump() for r in regimes]})
        paths[float(value)] = generate_ctmstou_path(swept, horizon, dt, np.random.default_rng(seed))
    return paths


def bin_path_to_ohlc(path: FundamentalPath, bar_seconds: float = 60.0, start_epoch: int = 0) -> pd.DataFrame:
    """Bins a path into OHLC bars; the open is the first grid value of each bar."""
    steps = int(round(bar_seconds / path.dt))
    if steps < 1:
        raise InvalidParametersError("bar_seconds", bar_seconds, f"shorter than dt={path.dt}")
    n_bars = (len(path.values) - 1) // steps
    if n_bars < 1:
        raise InvalidParametersError("bar_seconds", bar_seconds, "longer than the path")
    block = path.values[: n_bars * steps].reshape(n_bars, steps)
    frame = pd.DataFrame({
        "timestamp": start_epoch + np.arange(n_bars, dtype=np.int64) * int(bar_seconds),
        "open": block[:, 0],
        "high": block.max(axis=1),
        "low": block.min(axis=1),
        "close": block[:, -1],
        "volume": np.zeros(n_bars),
    })
    return frame[list(OHLC_COLUMNS)]
