from typing import List, Optional

import numpy as np

from regime_market.core.exceptions import OracleHorizonError
from regime_market.schemas.models.fundamental_schema import (
    FundamentalPath,
    RegimeParams,
    RegimeState,
)
from regime_market.schemas.models.message_schema import SimTime, seconds_to_ns


class Oracle:
    """
    Read access to a pre-generated fundamental path.

    A query at time t resolves against the last grid point at or before t.
    Regime answers are exact and noise-free.
    """
    def __init__(
        self,
        path: FundamentalPath,
        regimes: List[RegimeParams],
        observation_noise_sigma: float = 0.0,
    ):
        if observation_noise_sigma < 0:
            raise ValueError("observation_noise_sigma must be non-negative")
        self.path = path
        self.regimes = regimes
        self.observation_noise_sigma = observation_noise_sigma
        self._dt_ns = seconds_to_ns(path.dt)
        self.horizon_ns: SimTime = (len(path.values) - 1) * self._dt_ns

    def _index(self, t: SimTime) -> int:
        if t < 0 or t > self.horizon_ns:
            raise OracleHorizonError(t, self.horizon_ns)
        return int(t // self._dt_ns)

    def fundamental_value(self, t: SimTime) -> float:
        return float(self.path.values[self._index(t)])

    def observe_fundamental(
        self,
        t: SimTime,
        rng: np.random.Generator,
        noise_sigma: Optional[float] = None,
    ) -> int:
        """X_t plus Normal(0, sigma^2) observation noise, rounded to integer cents."""
        value = self.fundamental_value(t)
        sigma = self.observation_noise_sigma if noise_sigma is None else noise_sigma
        if sigma > 0:
            value += rng.normal(0.0, sigma)
        return int(round(value))

    def current_regime(self, t: SimTime) -> RegimeState:
        return int(self.path.states[self._index(t)])

    def is_upward(self, t: SimTime) -> bool:
        return self.regimes[self.current_regime(t)].mu > 0
