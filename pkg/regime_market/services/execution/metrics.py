from typing import Sequence

from regime_market.core.exceptions import ExecutionError
from regime_market.schemas.models.execution_schema import EpisodeMetrics, ParentOrder
from regime_market.schemas.models.order_schema import Fill


def compute_metrics(fills: Sequence[Fill], parent: ParentOrder, arrival_mid: float) -> EpisodeMetrics:
    """
    WAPr = sum(q_i * P_i) / sum(q_i), PctComp = sum(q_i) / Q and the WAPr
    normalized by the arrival mid. WAPr and the normalized price are None
    without fills.
    """
    if arrival_mid is None or arrival_mid <= 0:
        raise ExecutionError(f"arrival mid must be positive, got {arrival_mid!r}")

    ordered = sorted(fills, key=lambda f: f.time)
    filled = 0
    notional = 0
    curve = []
    for fill in ordered:
        filled += fill.qty
        notional += fill.qty * fill.price
        curve.append((fill.time, filled / parent.Q))

    if filled == 0:
        return EpisodeMetrics(pct_comp=0.0, wapr=None, normalized_price=None, fills=list(ordered))
    wapr = notional / filled
    return EpisodeMetrics(
        pct_comp=filled / parent.Q,
        wapr=wapr,
        normalized_price=wapr / arrival_mid,
        fills=list(ordered),
        completion_curve=curve,
    )
