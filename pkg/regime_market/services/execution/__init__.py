from regime_market.services.execution.execution_agent import ExecutionAgent
from regime_market.services.execution.metrics import compute_metrics
from regime_market.services.execution.placement import (
    opm_full_lo,
    opm_full_mo,
    opm_regime_aware_0,
    opm_regime_aware_1,
    passive_bid_price,
    place_child,
)
from regime_market.services.execution.schedule import build_schedule, slice_count
