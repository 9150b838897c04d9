import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from regime_market.core.config import settings
from regime_market.core.exceptions import EmptySampleError, InvalidParametersError
from regime_market.schemas.config_schema import CalibrationMethod, FundamentalConfig
from regime_market.schemas.models.calibration_schema import (
    CalibrationResult,
    LabelConfig,
    SwitchCountDistribution,
    TrialResult,
)
from regime_market.services.calibration.distance import wasserstein_1d
from regime_market.services.calibration.switch_distribution import simulate_switch_distribution
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("Calibrator")


@dataclass(frozen=True)
class _TrialSpec:
    index: int
    lambda_rate: float
    omega_rate: float
    seed: np.random.SeedSequence
    real: Tuple[int, ...]
    n_days: int
    method: CalibrationMethod
    day_config: Optional[FundamentalConfig]
    label_cfg: Optional[LabelConfig]


def draw_log_uniform(rng: np.random.Generator, low: float, high: float, size) -> np.ndarray:
    return 10.0 ** rng.uniform(math.log10(low), math.log10(high), size=size)


def _evaluate_trial(spec: _TrialSpec) -> Tuple[float, List[int]]:
    # Module-level so it pickles into worker processes
    simulated = simulate_switch_distribution(
        spec.lambda_rate,
        spec.omega_rate,
        spec.n_days,
        spec.method,
        np.random.default_rng(spec.seed),
        day_config=spec.day_config,
        label_cfg=spec.label_cfg,
    )
    return wasserstein_1d(spec.real, simulated.counts), simulated.counts


def calibrate_rates(
    real: SwitchCountDistribution,
    trials: int,
    seed: int = 0,
    method: CalibrationMethod = CalibrationMethod.LABELED,
    n_days: Optional[int] = None,
    day_config: Optional[FundamentalConfig] = None,
    label_cfg: Optional[LabelConfig] = None,
    search_low: float = 1e-7,
    search_high: float = 1e-3,
    workers: Optional[int] = None,
) -> CalibrationResult:
    """
    Random search for the symmetric two-regime rates (lambda, omega).

    Every trial draws both rates log-uniformly on [search_low, search_high]
    events/s, simulates `n_days` switch counts (default: as many as real days)
    and scores them by Wasserstein distance to `real`. The smallest distance
    wins, ties going to the lowest trial index. Trial i always runs on the
    i-th child of SeedSequence(seed), so serial and pooled runs agree.
    """
    if len(real) == 0:
        raise EmptySampleError("real switch-count distribution")
    if trials < 1:
        raise InvalidParametersError("trials", trials, "must be at least 1")
    if not 0 < search_low < search_high:
        raise InvalidParametersError("search_low", search_low, f"must be in (0, {search_high})")

    n_days = n_days or len(real)
    workers = workers or settings.WORKERS
    draws = draw_log_uniform(np.random.default_rng(seed), search_low, search_high, size=(trials, 2))
    seeds = np.random.SeedSequence(seed).spawn(trials)
    specs = [
        _TrialSpec(i, float(draws[i, 0]), float(draws[i, 1]), seeds[i], tuple(real.counts),
                   n_days, CalibrationMethod(method), day_config, label_cfg)
        for i in range(trials)
    ]

    logger.info_print(
        f"Calibrating on {len(real)} real days: {trials} trials, method={CalibrationMethod(method).value}, "
        f"{n_days} simulated days per trial, workers={workers}"
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_evaluate_trial, specs, chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = []
        step = max(1, trials // 10)
        for spec in specs:
            outcomes.append(_evaluate_trial(spec))
            if (spec.index + 1) % step == 0:
                logger.debug_print(f"{spec.index + 1}/{trials} trials evaluated")

    history = [
        TrialResult(spec.index, spec.lambda_rate, spec.omega_rate, distance)
        for spec, (distance, _) in zip(specs, outcomes)
    ]
    # argmin returns the first minimum, i.e. the lowest trial index on ties
    best = int(np.argmin([t.distance for t in history]))
    result = CalibrationResult(
        lambda_rate=history[best].lambda_rate,
        omega_rate=history[best].omega_rate,
        distance=history[best].distance,
        trials=trials,
        seed=seed,
        best_trial=best,
        simulated=SwitchCountDistribution(list(outcomes[best][1])),
        history=history,
    )
    logger.info_print(
        f"Best trial {best}: lambda={result.lambda_per_day:.4g}/day, omega={result.omega_per_day:.4g}/day, "
        f"distance={result.distance:.4g}"
    )
    return result
