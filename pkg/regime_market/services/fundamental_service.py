from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from regime_market.core.exceptions import InvalidParametersError
from regime_market.schemas.config_schema import FundamentalConfig
from regime_market.services.manifest_service import write_manifest
from regime_market.services.sde_engine import (
    bin_path_to_ohlc,
    generate_ctmstou_path,
    generate_paths_for_trace,
    parameter_sweep,
)
from regime_market.utils.CustomLogger import CustomLogger
from regime_market.utils.file_utils import write_frame

logger = CustomLogger("FundamentalService")


def simulate_fundamental(
    config: FundamentalConfig,
    horizon: float,
    seed: int,
    out_dir: Path,
    n_paths: int = 1,
    fixed_trace: bool = False,
    vary: Optional[str] = None,
    values: Optional[Sequence[float]] = None,
    ohlc: bool = False,
) -> Dict[str, Path]:
    """
    Writes fundamental paths as CSV under `out_dir` and returns them by name.

    - default: `path.csv` (t, X, M, s) and the regime trace `trace.csv`;
    - `n_paths` > 1: `paths.csv` in long form with a `path` column, all paths
      sharing one regime trace when `fixed_trace` is set;
    - `vary` theta|sigma with `values`: `sweep.csv`, one X column per value;
    - `ohlc`: 1-minute bars of the first path in `ohlc.csv`.
    """
    if n_paths < 1:
        raise InvalidParametersError("n_paths", n_paths, "must be at least 1")
    if vary is not None and not values:
        raise InvalidParametersError("values", values, f"required when sweeping '{vary}'")

    params = config.to_params()
    dt = config.dt
    rng = np.random.default_rng(seed)
    out_dir = Path(out_dir)
    written: Dict[str, Path] = {}

    first = generate_ctmstou_path(params, horizon, dt, rng)
    written["path"] = write_frame(first.to_frame(), out_dir / "path.csv")
    trace = pd.DataFrame(first.trace.switch_times, columns=["t", "s"])
    written["trace"] = write_frame(trace, out_dir / "trace.csv")
    logger.info_print(
        f"Path over {horizon:g} s: {first.trace.switch_count} regime switches, "
        f"X in [{first.values.min():.2f}, {first.values.max():.2f}]"
    )

    if n_paths > 1:
        if fixed_trace:
            paths = generate_paths_for_trace(params, first.trace, n_paths, horizon, dt, rng)
        else:
            paths = [generate_ctmstou_path(params, horizon, dt, child) for child in rng.spawn(n_paths)]
        frames = [p.to_frame().assign(path=i) for i, p in enumerate(paths)]
        written["paths"] = write_frame(pd.concat(frames, ignore_index=True), out_dir / "paths.csv")

    if vary is not None:
        swept = parameter_sweep(params, vary, values, horizon, dt, seed)
        frame = pd.DataFrame({"t": first.times, "M": next(iter(swept.values())).centers})
        for value, path in swept.items():
            frame[f"X_{vary}={value:g}"] = path.values
        written["sweep"] = write_frame(frame, out_dir / "sweep.csv")

    if ohlc:
        written["ohlc"] = write_frame(bin_path_to_ohlc(first), out_dir / "ohlc.csv")

    written["manifest"] = write_manifest(
        out_dir, "simulate-fundamental", config, [seed],
        horizon=horizon, n_paths=n_paths, fixed_trace=fixed_trace,
        vary=vary, values=list(values) if values else None, ohlc=ohlc,
    )

    return written
