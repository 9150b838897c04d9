import numpy as np

from regime_market.core.exceptions import InvalidParametersError, RateMatrixMismatchError
from regime_market.schemas.models.fundamental_schema import RateMatrix, RegimeState, RegimeTrace
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("Ctmc")


def sample_dwell_time(rates: RateMatrix, state: RegimeState, rng: np.random.Generator) -> float:
    """Exponential sojourn time with rate sum_j lambda_ij; inf for an absorbing state."""
    total = rates.total_rate(state)
    if total == 0.0:
        return float("inf")
    return float(rng.exponential(1.0 / total))


def sample_next_state(rates: RateMatrix, state: RegimeState, rng: np.random.Generator) -> RegimeState:
    """Next state j with probability lambda_ij / Lambda(i); j == i is a self-transition."""
    cumulative = np.cumsum(rates.jump_probabilities(state))
    # Inverse-CDF draw; clipped so rounding in the last cumulative entry cannot overflow
    return int(min(np.searchsorted(cumulative, rng.random(), side="right"), len(cumulative) - 1))


def ctmc_sample_trace(
    rates: RateMatrix,
    s0: RegimeState,
    horizon: float,
    rng: np.random.Generator,
    n_regimes: int | None = None,
) -> RegimeTrace:
    """
    Samples the regime chain on [0, horizon].

    The trace records every event, self-transitions included, so dwell
    times can be read from consecutive entries.
    """
    if horizon <= 0:
        raise InvalidParametersError("horizon", horizon, "must be positive")
    dimension = rates.dimension
    if n_regimes is not None and n_regimes != dimension:
        raise RateMatrixMismatchError(expected=n_regimes, actual=dimension)
    if not 0 <= s0 < dimension:
        raise RateMatrixMismatchError(expected=s0 + 1, actual=dimension)

    events = [(0.0, int(s0))]
    t = 0.0
    state = int(s0)
    while True:
        t += sample_dwell_time(rates, state, rng)
        if t > horizon:
            break
        state = sample_next_state(rates, state, rng)
        events.append((t, state))
    return RegimeTrace(switch_times=events)
