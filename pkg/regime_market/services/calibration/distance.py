from typing import Sequence

import numpy as np
from scipy.stats import wasserstein_distance

from regime_market.core.exceptions import EmptySampleError


def wasserstein_1d(a: Sequence[float], b: Sequence[float]) -> float:
    """Order-1 Wasserstein distance between the empirical distributions of a and b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0:
        raise EmptySampleError("first sample")
    if b.size == 0:
        raise EmptySampleError("second sample")
    return float(wasserstein_distance(a, b))
