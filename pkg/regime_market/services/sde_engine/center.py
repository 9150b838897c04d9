from typing import List, Sequence

import numpy as np

from regime_market.schemas.models.fundamental_schema import RegimeParams, RegimeTrace


def _segment_starts(trace: RegimeTrace, regimes: List[RegimeParams], m0: float):
    times = trace.times
    states = trace.states
    slopes = np.array([regimes[s].mu for s in states], dtype=float)
    # Center value at each event time, accumulated segment by segment
    starts = np.empty(len(times), dtype=float)
    starts[0] = m0
    for i in range(1, len(times)):
        starts[i] = starts[i - 1] + slopes[i - 1] * (times[i] - times[i - 1])
    return times, slopes, starts


def center_series(
    trace: RegimeTrace,
    regimes: List[RegimeParams],
    m0: float,
    grid: Sequence[float],
) -> np.ndarray:
    """
    Piecewise-linear center M_t = M_0 + sum of mu_s over the elapsed regime intervals.

    Uses the exact (off-grid) event times, so there is no quadrature error.
    """
    grid = np.asarray(grid, dtype=float)
    times, slopes, starts = _segment_starts(trace, regimes, m0)
    idx = np.searchsorted(times, grid, side="right") - 1
    idx = np.clip(idx, 0, len(times) - 1)
    return starts[idx] + slopes[idx] * (grid - times[idx])


def regime_state_series(trace: RegimeTrace, grid: Sequence[float]) -> np.ndarray:
    """State at each grid point: a switch takes effect at the first grid point >= its time."""
    grid = np.asarray(grid, dtype=float)
    idx = np.searchsorted(trace.times, grid, side="right") - 1
    return trace.states[np.clip(idx, 0, None)]
