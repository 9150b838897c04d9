from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, model_validator

from regime_market.schemas.models.fundamental_schema import SECONDS_PER_DAY, RateMatrix

OHLC_COLUMNS = ("timestamp", "open", "high", "low", "close", "volume")


@dataclass
class OhlcDay:
    """One UTC calendar day of minute bars; each frame row is one bar with the OHLC_COLUMNS fields."""
    date: datetime.date
    frame: pd.DataFrame
    missing_fraction: float = 0.0

    @property
    def opens(self) -> np.ndarray:
        return self.frame["open"].to_numpy(dtype=float)

    def __len__(self) -> int:
        return len(self.frame)


class LabelConfig(BaseModel):
    tau1: int = Field(360, gt=0, description="Short moving-average window [minutes].")
    tau2: int = Field(720, gt=0, description="Long moving-average window [minutes].")
    alpha: float = Field(2.0, gt=0.0, description="Volatility band rescaling.")

    @model_validator(mode="after")
    def _ordered_windows(self) -> "LabelConfig":
        if self.tau1 >= self.tau2:
            raise ValueError(f"tau1 ({self.tau1}) must be smaller than tau2 ({self.tau2})")
        return self


@dataclass
class SwitchCountDistribution:
    counts: List[int]

    @property
    def mean(self) -> float:
        return float(np.mean(self.counts)) if self.counts else 0.0

    def histogram(self, max_count: Optional[int] = None) -> pd.DataFrame:
        """Frequency table of switch counts 0..max_count."""
        top = max_count if max_count is not None else (max(self.counts) if self.counts else 0)
        freq = np.bincount(np.asarray(self.counts, dtype=int), minlength=top + 1)[: top + 1]
        return pd.DataFrame({"switch_count": np.arange(top + 1), "days": freq})

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class TrialResult:
    """One random-search draw and its distance to the real distribution."""
    trial_index: int
    lambda_rate: float
    omega_rate: float
    distance: float


@dataclass
class CalibrationResult:
    lambda_rate: float
    omega_rate: float
    distance: float
    trials: int
    seed: Optional[int] = None
    best_trial: int = 0
    simulated: SwitchCountDistribution = field(default_factory=lambda: SwitchCountDistribution([]))
    history: List[TrialResult] = field(default_factory=list, repr=False)

    @property
    def lambda_per_day(self) -> float:
        return self.lambda_rate * SECONDS_PER_DAY

    @property
    def omega_per_day(self) -> float:
        return self.omega_rate * SECONDS_PER_DAY

    @property
    def rate_matrix(self) -> RateMatrix:
        return RateMatrix.symmetric(self.lambda_rate, self.omega_rate)

    def report(self) -> dict:
        return {
            "lambda_per_second": self.lambda_rate,
            "lambda_per_day": self.lambda_per_day,
            "omega_per_second": self.omega_rate,
            "omega_per_day": self.omega_per_day,
            "distance": self.distance,
            "trials": self.trials,
            "best_trial": self.best_trial,
            "seed": self.seed,
            "rate_matrix_per_second": self.rate_matrix.entries,
        }
