# regime_market/schemas/config_schema.py

import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import List, Optional, Type, TypeVar

from pydantic import BaseModel, Field, ValidationError, model_validator

from regime_market.core.config import settings
from regime_market.core.exceptions import ConfigValidationError, InvalidParentOrderError
from regime_market.schemas.models.calibration_schema import LabelConfig
from regime_market.schemas.models.execution_schema import ParentOrder, Strategy
from regime_market.schemas.models.fundamental_schema import (
    CtmstouParams,
    RateMatrix,
    RegimeParams,
)
from regime_market.utils.file_utils import load_yaml_config

ConfigModel = TypeVar("ConfigModel", bound=BaseModel)


class FundamentalConfig(BaseModel):
    """CTMSTOU fundamental. Rates are given per day (symmetric) or as a full per-second matrix."""
    regimes: List[RegimeParams]
    lambda_per_day: Optional[float] = Field(None, ge=0.0)
    omega_per_day: Optional[float] = Field(None, ge=0.0)
    rate_matrix: Optional[List[List[float]]] = None
    x0: float = 100_000.0
    m0: float = 100_000.0
    s0: int = 0
    random_initial_state: bool = False
    dt: float = Field(default_factory=lambda: settings.DEFAULT_DT, gt=0.0)

    @model_validator(mode="after")
    def _one_rate_source(self) -> "FundamentalConfig":
        symmetric = self.lambda_per_day is not None or self.omega_per_day is not None
        if symmetric and self.rate_matrix is not None:
            raise ValueError("give either lambda_per_day/omega_per_day or rate_matrix, not both")
        if symmetric and len(self.regimes) != 2:
            raise ValueError("lambda_per_day/omega_per_day describe a two-regime chain")
        return self

    def rates(self) -> RateMatrix:
        if self.rate_matrix is not None:
            return RateMatrix(entries=self.rate_matrix)
        if self.lambda_per_day is None and self.omega_per_day is None:
            n = len(self.regimes)
            return RateMatrix(entries=[[0.0] * n for _ in range(n)])
        return RateMatrix.from_per_day([
            [self.lambda_per_day or 0.0, self.omega_per_day or 0.0],
            [self.omega_per_day or 0.0, self.lambda_per_day or 0.0],
        ])

    def to_params(self) -> CtmstouParams:
        return CtmstouParams(
            regimes=self.regimes,
            rates=self.rates(),
            x0=self.x0,
            m0=self.m0,
            s0=self.s0,
            random_initial_state=self.random_initial_state,
        )


class ValueAgentConfig(BaseModel):
    count: int = Field(100, ge=0)
    wake_rate: float = Field(..., gt=0.0, description="Wake-ups per second per agent.")
    order_size: int = Field(..., gt=0)
    noise_sigma: float = Field(..., ge=0.0, description="Fundamental observation noise [cents].")
    limit_offset_ticks: int = Field(0, ge=0)


class MomentumAgentConfig(BaseModel):
    count: int = Field(25, ge=0)
    wake_rate: float = Field(..., gt=0.0)
    order_size: int = Field(..., gt=0)
    short_window: int = Field(20, gt=0)
    long_window: int = Field(50, gt=0)

    @model_validator(mode="after")
    def _ordered_windows(self) -> "MomentumAgentConfig":
        if self.short_window >= self.long_window:
            raise ValueError("short_window must be smaller than long_window")
        return self


class NoiseAgentConfig(BaseModel):
    count: int = Field(1000, ge=0)
    wake_rate: float = Field(..., gt=0.0)
    min_size: int = Field(1, gt=0)
    max_size: int = Field(10, gt=0)
    spread_width: int = Field(3, ge=1, description="Max limit offset from the touch [ticks].")
    market_order_prob: float = Field(0.1, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _ordered_sizes(self) -> "NoiseAgentConfig":
        if self.min_size > self.max_size:
            raise ValueError("min_size must not exceed max_size")
        return self


class MarketMakerConfig(BaseModel):
    count: int = Field(1, ge=0)
    wake_interval: float = Field(10.0, gt=0.0, description="Seconds between ladder refreshes.")
    levels: int = Field(5, gt=0)
    size: int = Field(50, gt=0)


class PopulationConfig(BaseModel):
    value: ValueAgentConfig
    momentum: MomentumAgentConfig
    noise: NoiseAgentConfig
    market_maker: MarketMakerConfig
    # Reference price for agents that see an empty book; defaults to round(x0)
    initial_price: Optional[int] = Field(None, gt=0)

    @model_validator(mode="after")
    def _liquidity_source(self) -> "PopulationConfig":
        if self.market_maker.count < 1:
            raise ValueError("at least one market maker is required to seed the book")
        return self


class ParentOrderConfig(BaseModel):
    Q: int = 20_000
    T: float = 82_800.0
    tau: float = 60.0
    k: int = 10

    @model_validator(mode="after")
    def _valid_parent(self) -> "ParentOrderConfig":
        try:
            self.to_parent()
        except InvalidParentOrderError as e:
            raise ValueError(str(e)) from e
        return self

    def to_parent(self) -> ParentOrder:
        return ParentOrder(Q=self.Q, T=self.T, tau=self.tau, k=self.k)


class ExperimentConfig(BaseModel):
    config_version: str = "1"
    seeds: Optional[List[int]] = None
    base_seed: int = 0
    n_seeds: int = Field(1, ge=1)
    fundamental: FundamentalConfig
    population: PopulationConfig
    parent: ParentOrderConfig = ParentOrderConfig()
    strategies: List[Strategy] = Field(default_factory=lambda: list(Strategy))
    warmup_seconds: float = Field(300.0, ge=0.0)
    latency_ns: int = Field(1_000, ge=0)
    output_dir: Optional[Path] = None
    record_event_log: bool = False

    @model_validator(mode="after")
    def _seed_source(self) -> "ExperimentConfig":
        if self.seeds is not None and len(self.seeds) == 0:
            raise ValueError("seeds must not be empty")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        return self

    def seed_list(self) -> List[int]:
        if self.seeds is not None:
            return list(self.seeds)
        return [self.base_seed + i for i in range(self.n_seeds)]

    @property
    def session_seconds(self) -> float:
        return self.warmup_seconds + self.parent.T


class CalibrationMethod(str, Enum):
    LABELED = "labeled"
    EXACT = "exact"


class CalibrationConfig(BaseModel):
    config_version: str = "1"
    label: LabelConfig = LabelConfig()
    trials: int = Field(500, ge=1)
    method: CalibrationMethod = CalibrationMethod.LABELED
    seed: int = 0
    # Log-uniform search support for lambda and omega [events/s]
    search_low: float = Field(1e-7, gt=0.0)
    search_high: float = Field(1e-3, gt=0.0)
    # Simulated days per trial; None = as many as real days
    n_sim_days: Optional[int] = Field(None, ge=1)
    # Days missing more than this fraction of their minutes are excluded
    max_missing_fraction: float = Field(0.1, ge=0.0, le=1.0)
    # Process used to simulate a trading day in labeled mode (rates are overridden per trial)
    day: FundamentalConfig

    @model_validator(mode="after")
    def _ordered_support(self) -> "CalibrationConfig":
        if self.search_low >= self.search_high:
            raise ValueError("search_low must be smaller than search_high")
        return self


def _load_model(model: Type[ConfigModel], config_path: Path) -> ConfigModel:
    data = load_yaml_config(config_path)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ConfigValidationError(Path(config_path).name, str(e)) from e


def load_experiment_config(config_path: Path) -> ExperimentConfig:
    return _load_model(ExperimentConfig, config_path)


def load_calibration_config(config_path: Path) -> CalibrationConfig:
    return _load_model(CalibrationConfig, config_path)


def config_hash(config: BaseModel) -> str:
    """SHA-256 of the canonical JSON dump of a validated config."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
