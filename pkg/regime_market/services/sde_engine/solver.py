import math
from typing import Sequence, Tuple

import numpy as np

from regime_market.core.exceptions import InvalidParametersError


def euler_maruyama_step(x, drift, diffusion, dt: float, dW):
    """
    One Euler-Maruyama step: x + drift * dt + diffusion * dW.

    Works on floats and elementwise on numpy arrays.
    """
    return x + drift * dt + diffusion * dW


def split_streams(rng: np.random.Generator) -> Tuple[np.random.Generator, np.random.Generator]:
    """
    Spawns (regime_rng, diffusion_rng) from `rng`.

    Every path generator draws its Wiener increments from the second child,
    so two generators built from equally seeded sources see the same dW.
    """
    regime_rng, diffusion_rng = rng.spawn(2)
    return regime_rng, diffusion_rng


def time_grid(horizon: float, dt: float) -> np.ndarray:
    if horizon <= 0:
        raise InvalidParametersError("horizon", horizon, "must be positive")
    if dt <= 0:
        raise InvalidParametersError("dt", dt, "must be positive")
    n_steps = int(math.floor(horizon / dt + 1e-9))
    if n_steps < 1:
        raise InvalidParametersError("dt", dt, f"larger than the horizon {horizon}")
    return np.arange(n_steps + 1) * dt


def wiener_increments(rng: np.random.Generator, n_steps: int, dt: float) -> np.ndarray:
    """n_steps draws of Normal(0, dt)."""
    return rng.normal(0.0, math.sqrt(dt), size=n_steps)


def integrate_mean_reverting(
    x0: float,
    theta: Sequence[float],
    center: Sequence[float],
    sigma: Sequence[float],
    dt: float,
    dW: Sequence[float],
) -> np.ndarray:
    """
    Iterates euler_maruyama_step with drift theta_n * (center_n - x_n) and
    diffusion sigma_n. All series are indexed by grid point; dW by step.
    """
    n_steps = len(dW)
    # Python floats keep the loop fast and give the same IEEE results as float64
    theta_l = list(map(float, theta))
    center_l = list(map(float, center))
    sigma_l = list(map(float, sigma))
    dW_l = list(map(float, dW))

    out = [0.0] * (n_steps + 1)
    x = float(x0)
    out[0] = x
    for n in range(n_steps):
        x = euler_maruyama_step(x, theta_l[n] * (center_l[n] - x), sigma_l[n], dt, dW_l[n])
        out[n + 1] = x
    return np.asarray(out)
