from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator

SECONDS_PER_DAY = 86_400.0

# Regime index in [0, k]
RegimeState = int


class RegimeParams(BaseModel):
    """Per-regime coefficients of the switching trending OU process."""
    theta: float = Field(..., ge=0.0, description="Mean-reversion speed [1/s].")
    mu: float = Field(..., description="Slope of the center term [price units/s].")
    sigma: float = Field(..., ge=0.0, description="Diffusion [price units/sqrt(s)].")


class RateMatrix(BaseModel):
    """Continuous-time Markov chain rates lambda_ij in events per second."""
    entries: List[List[float]]

    @field_validator("entries")
    @classmethod
    def _square_non_negative(cls, entries: List[List[float]]) -> List[List[float]]:
        n = len(entries)
        if n == 0:
            raise ValueError("rate matrix must not be empty")
        for row in entries:
            if len(row) != n:
                raise ValueError("rate matrix must be square")
            if any(v < 0 for v in row):
                raise ValueError("rates must be non-negative")
        return entries

    @classmethod
    def symmetric(cls, lambda_rate: float, omega_rate: float) -> "RateMatrix":
        """Two-regime matrix with lambda on the diagonal and omega off it."""
        return cls(entries=[[lambda_rate, omega_rate], [omega_rate, lambda_rate]])

    @classmethod
    def from_per_day(cls, entries: List[List[float]]) -> "RateMatrix":
        return cls(entries=[[v / SECONDS_PER_DAY for v in row] for row in entries])

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    def total_rate(self, state: RegimeState) -> float:
        return float(sum(self.entries[state]))

    def jump_probabilities(self, state: RegimeState) -> np.ndarray:
        row = np.asarray(self.entries[state], dtype=float)
        total = row.sum()
        if total == 0.0:
            return np.zeros_like(row)
        return row / total


class CtmstouParams(BaseModel):
    regimes: List[RegimeParams]
    rates: RateMatrix
    x0: float
    m0: float
    s0: RegimeState = 0
    # Draw s0 uniformly per path from the regime stream instead of using s0
    random_initial_state: bool = False

    @model_validator(mode="after")
    def _check_dimensions(self) -> "CtmstouParams":
        if not self.regimes:
            raise ValueError("at least one regime is required")
        if self.rates.dimension != len(self.regimes):
            raise ValueError(
                f"rate matrix dimension {self.rates.dimension} != {len(self.regimes)} regimes"
            )
        if not 0 <= self.s0 < len(self.regimes):
            raise ValueError(f"s0={self.s0} outside [0, {len(self.regimes) - 1}]")
        return self

    @property
    def n_regimes(self) -> int:
        return len(self.regimes)

    def max_abs_slope(self) -> float:
        return max(abs(r.mu) for r in self.regimes)


@dataclass
class RegimeTrace:
    """
    Event times of the regime chain, starting with (0, s0).

    Every CTMC event is kept, self-transitions included, so inter-event
    times are the dwell times of the chain.
    """
    switch_times: List[Tuple[float, RegimeState]]

    @property
    def initial_state(self) -> RegimeState:
        return self.switch_times[0][1]

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.switch_times], dtype=float)

    @property
    def states(self) -> np.ndarray:
        return np.array([s for _, s in self.switch_times], dtype=int)

    @property
    def switch_count(self) -> int:
        """Number of events that changed the regime label."""
        states = self.states
        return int(np.count_nonzero(states[1:] != states[:-1]))

    def dwell_times(self, state: RegimeState) -> np.ndarray:
        """Completed inter-event times spent in `state` (the last, censored one excluded)."""
        times = self.times
        states = self.states
        gaps = np.diff(times)
        return gaps[states[:-1] == state]


@dataclass
class FundamentalPath:
    dt: float
    values: np.ndarray
    centers: np.ndarray
    states: np.ndarray
    trace: RegimeTrace = field(repr=False)

    def __post_init__(self):
        if not (len(self.values) == len(self.centers) == len(self.states)):
            raise ValueError("values, centers and states must have equal lengths")

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.values)) * self.dt

    @property
    def horizon(self) -> float:
        return (len(self.values) - 1) * self.dt

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": self.times,
            "X": self.values,
            "M": self.centers,
            "s": self.states.astype(int),
        })
