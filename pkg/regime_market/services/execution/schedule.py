import math
from fractions import Fraction
from typing import List

from regime_market.schemas.models.execution_schema import ChildSlice, ParentOrder


def slice_count(parent: ParentOrder) -> int:
    # Tolerance keeps T/tau = 1380.0000000001 from producing an extra slice
    return max(1, math.ceil(parent.T / parent.tau - 1e-9))


def build_schedule(parent: ParentOrder) -> List[ChildSlice]:
    """
    TWAP schedule: ceil(T/tau) slices at 0, tau, 2*tau, ...

    The per-slice target is Q*tau/T; integer sizes come from the floor of the
    cumulative target, so the fractional remainder carries forward and the
    sizes sum to Q exactly (the last slice absorbs whatever is left).
    """
    n = slice_count(parent)
    per_slice = Fraction(parent.Q) * Fraction(parent.tau) / Fraction(parent.T)
    slices = []
    done = 0
    for i in range(n):
        cumulative = parent.Q if i == n - 1 else min(parent.Q, math.floor(per_slice * (i + 1)))
        slices.append(ChildSlice(fire_time=i * parent.tau, qty=cumulative - done))
        done = cumulative
    return slices
