import math

import numpy as np
import pytest
from scipy import stats

from regime_market.core.exceptions import InvalidParametersError, RateMatrixMismatchError
from regime_market.schemas.models.fundamental_schema import (
    CtmstouParams,
    RateMatrix,
    RegimeParams,
    RegimeTrace,
)
from regime_market.services.sde_engine import (
    bin_path_to_ohlc,
    center_series,
    ctmc_sample_trace,
    euler_gbm_path,
    euler_maruyama_step,
    gbm_exact_path,
    generate_ctmstou_path,
    generate_fou_path,
    generate_ou_path,
    generate_paths_for_trace,
    generate_tou_path,
    parameter_sweep,
    regime_state_series,
    sample_dwell_time,
    split_streams,
    time_grid,
    wiener_increments,
)


# --- euler_maruyama_step ---

@pytest.mark.parametrize(
    "x,drift,diffusion,dt,dW,expected",
    [
        (10_000.0, 0.0, 0.0, 1.0, 0.3, 10_000.0),
        (10_000.0, 1.0 * (10_010.0 - 10_000.0), 0.0, 0.1, 0.0, 10_001.0),
        (100.0, 0.0, 2.0, 1.0, 0.5, 101.0),
    ],
)
def test_euler_step(x, drift, diffusion, dt, dW, expected):
    assert euler_maruyama_step(x, drift, diffusion, dt, dW) == pytest.approx(expected)


def test_time_grid_rejects_bad_step():
    with pytest.raises(InvalidParametersError):
        time_grid(10.0, 0.0)
    with pytest.raises(InvalidParametersError):
        time_grid(-1.0, 1.0)


def test_split_streams_are_reproducible_and_distinct(make_rng):
    regime_a, diffusion_a = split_streams(make_rng(8))
    regime_b, diffusion_b = split_streams(make_rng(8))
    np.testing.assert_array_equal(diffusion_a.normal(size=5), diffusion_b.normal(size=5))
    assert not np.array_equal(regime_a.random(5), diffusion_b.random(5))
    assert np.array_equal(regime_b.random(5), make_rng(8).spawn(2)[0].random(5))


def test_wiener_increments_have_step_variance(make_rng):
    dW = wiener_increments(make_rng(2), 200_000, 0.25)
    assert dW.shape == (200_000,)
    assert abs(dW.mean()) < 0.005
    assert dW.var() == pytest.approx(0.25, rel=0.02)


# --- ctmc_sample_trace ---

def test_absorbing_state_has_single_event(make_rng):
    rates = RateMatrix(entries=[[0.0, 0.0], [0.0, 0.0]])
    trace = ctmc_sample_trace(rates, 0, 3600.0, make_rng(1))
    assert trace.switch_times == [(0.0, 0)]
    assert trace.switch_count == 0


def test_trace_rejects_state_outside_matrix(make_rng, hourly_rates):
    with pytest.raises(RateMatrixMismatchError):
        ctmc_sample_trace(hourly_rates, 2, 100.0, make_rng())
    with pytest.raises(RateMatrixMismatchError):
        ctmc_sample_trace(hourly_rates, 0, 100.0, make_rng(), n_regimes=3)


def test_trace_times_increase_and_stay_in_horizon(make_rng):
    rates = RateMatrix.symmetric(0.01, 0.01)
    trace = ctmc_sample_trace(rates, 1, 5_000.0, make_rng(3))
    times = trace.times
    assert times[0] == 0.0 and trace.initial_state == 1
    assert np.all(np.diff(times) > 0)
    assert times[-1] <= 5_000.0


def test_symmetric_rates_pick_each_state_half_the_time(make_rng):
    rates = RateMatrix.symmetric(0.05, 0.05)
    trace = ctmc_sample_trace(rates, 0, 400_000.0, make_rng(7))
    next_states = trace.states[1:]
    assert len(next_states) > 10_000
    assert next_states.mean() == pytest.approx(0.5, abs=0.02)


def test_mean_dwell_time_matches_total_rate(make_rng, hourly_rates):
    rng = make_rng(11)
    dwell = np.array([sample_dwell_time(hourly_rates, 0, rng) for _ in range(100_000)])
    assert dwell.mean() == pytest.approx(3600 / 0.7, rel=0.01)


def test_dwell_times_are_exponential(make_rng):
    rates = RateMatrix(entries=[[0.02, 0.03], [0.01, 0.01]])
    trace = ctmc_sample_trace(rates, 0, 2_000_000.0, make_rng(5))
    dwell = trace.dwell_times(0)[:10_000]
    assert len(dwell) == 10_000
    result = stats.kstest(dwell, "expon", args=(0.0, 1.0 / 0.05))
    assert result.pvalue > 0.01


# --- center_series ---

def test_center_without_switches_is_linear(up_down_regimes):
    trace = RegimeTrace(switch_times=[(0.0, 0)])
    assert center_series(trace, up_down_regimes, 10_000.0, [50.0])[0] == pytest.approx(10_500.0)


def test_center_after_one_switch(up_down_regimes):
    trace = RegimeTrace(switch_times=[(0.0, 0), (100.0, 1)])
    assert center_series(trace, up_down_regimes, 10_000.0, [150.0])[0] == pytest.approx(10_500.0)


def _brute_force_center(trace, regimes, m0, t):
    total = m0
    events = trace.switch_times
    for i, (start, state) in enumerate(events):
        if start >= t:
            break
        end = events[i + 1][0] if i + 1 < len(events) else t
        total += regimes[state].mu * (min(end, t) - start)
    return total


@pytest.mark.parametrize("seed", range(100))
def test_center_matches_segment_quadrature(make_rng, up_down_regimes, seed):
    rates = RateMatrix.symmetric(0.002, 0.004)
    trace = ctmc_sample_trace(rates, 0, 3_600.0, make_rng(seed))
    grid = time_grid(3_600.0, 7.0)
    centers = center_series(trace, up_down_regimes, 10_000.0, grid)
    expected = [_brute_force_center(trace, up_down_regimes, 10_000.0, t) for t in grid]
    np.testing.assert_allclose(centers, expected, rtol=0, atol=1e-6)


def test_switch_applies_at_first_grid_point_at_or_after_it():
    trace = RegimeTrace(switch_times=[(0.0, 0), (2.5, 1), (4.0, 0)])
    states = regime_state_series(trace, time_grid(6.0, 1.0))
    assert states.tolist() == [0, 0, 0, 1, 0, 0, 0]


# --- generate_ctmstou_path ---

def test_ctmstou_is_deterministic(make_rng, switching_params):
    a = generate_ctmstou_path(switching_params, 3_600.0, 1.0, make_rng(42))
    b = generate_ctmstou_path(switching_params, 3_600.0, 1.0, make_rng(42))
    np.testing.assert_array_equal(a.values, b.values)
    np.testing.assert_array_equal(a.centers, b.centers)
    np.testing.assert_array_equal(a.states, b.states)
    assert a.trace.switch_times == b.trace.switch_times


def test_ctmstou_fixed_point_without_noise(make_rng):
    params = CtmstouParams(
        regimes=[RegimeParams(theta=1.0, mu=0.0, sigma=0.0)],
        rates=RateMatrix(entries=[[0.0]]),
        x0=10_000.0,
        m0=10_000.0,
    )
    path = generate_ctmstou_path(params, 500.0, 1.0, make_rng())
    assert np.all(path.values == 10_000.0)


@pytest.mark.parametrize("seed", [3, 4])
def test_center_continuity(make_rng, switching_params, seed):
    path = generate_ctmstou_path(switching_params, 20_000.0, 1.0, make_rng(seed))
    jumps = np.abs(np.diff(path.centers))
    assert jumps.max() <= switching_params.max_abs_slope() * 1.0 + 1e-9


def test_path_tracks_center(make_rng, switching_params):
    path = generate_ctmstou_path(switching_params, 7_200.0, 0.1, make_rng(8))
    # Steady lag of mu / theta plus a wide band of the discrete stationary spread
    spread = math.sqrt(4.0 * 0.1 / (2 * 0.1 - 0.01))
    assert np.max(np.abs(path.values - path.centers)) <= 10.0 + 8 * spread
    assert path.to_frame().columns.tolist() == ["t", "X", "M", "s"]


def test_random_initial_state_uses_both_regimes(switching_params):
    params = switching_params.model_copy(update={"random_initial_state": True})
    starts = {
        generate_ctmstou_path(params, 10.0, 1.0, np.random.default_rng(seed)).trace.initial_state
        for seed in range(40)
    }
    assert starts == {0, 1}


def test_single_regime_without_slope_reduces_to_ou(make_rng, single_regime_params):
    path = generate_ctmstou_path(single_regime_params, 1_000.0, 0.5, make_rng(9))
    ou = generate_ou_path(1.0, 100.0, 2.0, 100.0, 1_000.0, 0.5, make_rng(9))
    np.testing.assert_array_equal(path.values, ou)


def test_paths_for_one_trace_share_the_center(make_rng, switching_params):
    trace = ctmc_sample_trace(switching_params.rates, 0, 3_600.0, make_rng(2))
    paths = generate_paths_for_trace(switching_params, trace, 3, 3_600.0, 1.0, make_rng(3))
    assert len(paths) == 3
    np.testing.assert_array_equal(paths[0].centers, paths[1].centers)
    assert not np.array_equal(paths[0].values, paths[1].values)


def test_parameter_sweep_shares_trace(switching_params):
    paths = parameter_sweep(switching_params, "sigma", [0.5, 2.0], 3_600.0, 1.0, seed=4)
    low, high = paths[0.5], paths[2.0]
    assert low.trace.switch_times == high.trace.switch_times
    assert np.std(low.values - low.centers) < np.std(high.values - high.centers)
    with pytest.raises(InvalidParametersError):
        parameter_sweep(switching_params, "mu", [1.0], 10.0, 1.0, seed=0)


def test_ohlc_binning_uses_first_value_as_open(make_rng, switching_params):
    path = generate_ctmstou_path(switching_params, 600.0, 1.0, make_rng(1))
    bars = bin_path_to_ohlc(path, bar_seconds=60.0)
    assert len(bars) == 10
    assert bars["open"].iloc[1] == path.values[60]
    assert (bars["high"] >= bars["low"]).all()


# --- OU / TOU / FOU ---

def test_ou_constant_without_noise(make_rng):
    assert np.all(generate_ou_path(1.0, 50.0, 0.0, 50.0, 100.0, 1.0, make_rng()) == 50.0)


def test_ou_stationary_moments(make_rng):
    theta, mu, sigma, dt = 1.0, 100.0, 2.0, 0.05
    horizon = 10_000.0
    path = generate_ou_path(theta, mu, sigma, mu, horizon, dt, make_rng(21))
    tail = path[int(100 / dt):]
    n_eff = horizon * theta / 2
    assert abs(tail.mean() - mu) < 3 * sigma / math.sqrt(2 * theta * n_eff)
    assert tail.var() == pytest.approx(sigma ** 2 / (2 * theta), rel=0.10)


def test_ou_discrete_stationary_variance_at_coarse_step(make_rng):
    theta, sigma, dt = 0.5, 2.0, 1.0
    path = generate_ou_path(theta, 0.0, sigma, 0.0, 200_000.0, dt, make_rng(22))
    discrete = sigma ** 2 * dt / (2 * theta * dt - theta ** 2 * dt ** 2)
    assert path[1_000:].var() == pytest.approx(discrete, rel=0.05)


def test_ou_without_reversion_is_brownian():
    terminal = np.array([
        generate_ou_path(0.0, 7.0, 2.0, 0.0, 100.0, 1.0, np.random.default_rng(seed))[-1]
        for seed in range(2_000)
    ])
    assert terminal.var() == pytest.approx(4.0 * 100.0, rel=0.1)


def test_tou_without_trend_is_ou(make_rng):
    tou = generate_tou_path(1.0, 5.0, 0.0, 1.0, 5.0, 200.0, 1.0, make_rng(12))
    ou = generate_ou_path(1.0, 5.0, 1.0, 5.0, 200.0, 1.0, make_rng(12))
    np.testing.assert_array_equal(tou, ou)


def test_tou_without_noise_is_a_line(make_rng):
    path = generate_tou_path(1.0, 5.0, 0.25, 0.0, 5.0, 100.0, 1.0, make_rng())
    np.testing.assert_allclose(path, 5.0 + 0.25 * time_grid(100.0, 1.0))


def test_detrended_tou_is_stationary(make_rng):
    dt = 0.05
    path = generate_tou_path(1.0, 0.0, 0.3, 2.0, 0.0, 5_000.0, dt, make_rng(13))
    detrended = path - 0.3 * time_grid(5_000.0, dt)
    assert detrended[2_000:].var() == pytest.approx(2.0, rel=0.1)


def test_fou_with_constant_center_is_ou(make_rng):
    fou = generate_fou_path(1.0, lambda t: 5.0, 1.0, 5.0, 200.0, 1.0, make_rng(14))
    ou = generate_ou_path(1.0, 5.0, 1.0, 5.0, 200.0, 1.0, make_rng(14))
    np.testing.assert_array_equal(fou, ou)


def test_fou_tracks_slow_center_without_noise(make_rng):
    theta, slope = 5.0, 0.1
    path = generate_fou_path(theta, lambda t: 10.0 + slope * t, 0.0, 10.0, 50.0, 0.01, make_rng())
    lag = 10.0 + slope * time_grid(50.0, 0.01) - path
    assert np.max(np.abs(lag)) <= slope / theta + 1e-9


def test_fou_with_regime_center_matches_ctmstou(make_rng, switching_params):
    trace = ctmc_sample_trace(switching_params.rates, 0, 3_600.0, make_rng(15))
    regimes = switching_params.regimes
    path = generate_ctmstou_path(switching_params, 3_600.0, 1.0, make_rng(16), trace=trace)
    fou = generate_fou_path(
        1.0,
        lambda t: center_series(trace, regimes, switching_params.m0, [t])[0],
        2.0,
        switching_params.x0,
        3_600.0,
        1.0,
        make_rng(16),
    )
    np.testing.assert_array_equal(path.values, fou)


# --- GBM ---

def test_gbm_without_noise_is_exponential(make_rng):
    path = gbm_exact_path(10.0, 0.01, 0.0, 50.0, 1.0, make_rng())
    np.testing.assert_allclose(path, 10.0 * np.exp(0.01 * time_grid(50.0, 1.0)))


def test_gbm_without_drift_or_noise_is_constant(make_rng):
    assert np.all(gbm_exact_path(3.0, 0.0, 0.0, 10.0, 1.0, make_rng()) == 3.0)


def test_gbm_requires_positive_start(make_rng):
    with pytest.raises(InvalidParametersError):
        gbm_exact_path(0.0, 0.0, 0.1, 10.0, 1.0, make_rng())


def test_euler_gbm_strong_convergence():
    steps = [1.0, 0.5, 0.25, 0.125]
    rms = []
    for dt in steps:
        errors = [
            euler_gbm_path(1.0, 0.05, 0.2, 4.0, dt, np.random.default_rng(seed))[-1]
            - gbm_exact_path(1.0, 0.05, 0.2, 4.0, dt, np.random.default_rng(seed))[-1]
            for seed in range(1_000)
        ]
        rms.append(math.sqrt(np.mean(np.square(errors))))
    slope = np.polyfit(np.log(steps), np.log(rms), 1)[0]
    assert 0.4 <= slope <= 0.6
