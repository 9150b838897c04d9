from regime_market.services.sde_engine.center import center_series, regime_state_series
from regime_market.services.sde_engine.ctmc import (
    ctmc_sample_trace,
    sample_dwell_time,
    sample_next_state,
)
from regime_market.services.sde_engine.processes import (
    bin_path_to_ohlc,
    euler_gbm_path,
    gbm_exact_path,
    generate_ctmstou_path,
    generate_fou_path,
    generate_ou_path,
    generate_paths_for_trace,
    generate_tou_path,
    parameter_sweep,
)
from regime_market.services.sde_engine.solver import (
    euler_maruyama_step,
    integrate_mean_reverting,
    split_streams,
    time_grid,
    wiener_increments,
)
