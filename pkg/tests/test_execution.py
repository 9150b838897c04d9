import math

import numpy as np
import pytest

from regime_market.core.exceptions import ExecutionError, InvalidParentOrderError
from regime_market.schemas.config_schema import FundamentalConfig
from regime_market.schemas.models.execution_schema import ParentOrder, Strategy
from regime_market.schemas.models.fundamental_schema import FundamentalPath, RegimeParams, RegimeTrace
from regime_market.schemas.models.order_schema import BookSnapshot, Fill, OrderInstruction, OrderKind, Side
from regime_market.services.agents import ExchangeAgent, Oracle, TradingAgent
from regime_market.services.event_kernel import Kernel
from regime_market.services.execution import (
    ExecutionAgent,
    build_schedule,
    compute_metrics,
    passive_bid_price,
    place_child,
    slice_count,
)
from regime_market.services.market_service import run_episode

UP = RegimeParams(theta=1.0, mu=0.1, sigma=2.0)
DOWN = RegimeParams(theta=1.0, mu=-0.1, sigma=2.0)


def book(bid=None, ask=None, last=None):
    return BookSnapshot(
        time=0,
        bids=((bid, 10),) if bid is not None else (),
        asks=((ask, 10),) if ask is not None else (),
        last_trade=(last, 1, 0) if last is not None else None,
    )


# --- schedule ---

def test_desk_schedule():
    parent = ParentOrder(Q=20_000, T=82_800, tau=60, k=10)
    slices = build_schedule(parent)
    assert len(slices) == 1_380
    assert sum(s.qty for s in slices) == 20_000
    assert {s.qty for s in slices} <= {14, 15}
    assert slices[1].fire_time == 60
    assert slice_count(parent.aggregated()) == 138
    assert sum(s.qty for s in build_schedule(parent.aggregated())) == 20_000


def check_random_schedule(rng):
    Q = int(rng.integers(1, 50_000))
    tau = float(rng.integers(1, 600))
    T = tau * float(rng.uniform(1.01, 500.0))
    slices = build_schedule(ParentOrder(Q=Q, T=T, tau=tau))
    assert len(slices) == math.ceil(T / tau)
    assert sum(s.qty for s in slices) == Q
    assert all(s.qty >= 0 for s in slices)
    target = Q * tau / T
    assert all(abs(s.qty - target) <= 1 for s in slices[:-1])


@pytest.mark.parametrize("seed", range(20))
def test_schedule_sums_to_parent_quantity(seed):
    check_random_schedule(np.random.default_rng(seed))


@pytest.mark.slow
def test_schedule_sums_to_parent_quantity_at_scale():
    rng = np.random.default_rng(2_024)
    for _ in range(10_000):
        check_random_schedule(rng)


def test_small_quantity_spreads_over_slices():
    slices = build_schedule(ParentOrder(Q=3, T=10, tau=1))
    assert [s.qty for s in slices] == [0, 0, 0, 1, 0, 0, 1, 0, 0, 1]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"Q": 0, "T": 10, "tau": 1},
        {"Q": 10, "T": 10, "tau": 10},
        {"Q": 10, "T": 10, "tau": 0},
        {"Q": 10, "T": 10, "tau": 1, "k": 0},
        {"Q": 100, "T": 10, "tau": 2, "k": 5},
        {"Q": 100, "T": 10, "tau": 2, "k": 7},
        {"Q": 10, "T": 10, "tau": 1, "side": Side.SELL},
    ],
)
def test_invalid_parent_orders(kwargs):
    with pytest.raises(InvalidParentOrderError):
        ParentOrder(**kwargs)


def test_aggregated_period_just_inside_the_horizon():
    parent = ParentOrder(Q=100, T=10, tau=2, k=4)
    aggregated = parent.aggregated()
    assert (aggregated.tau, aggregated.k) == (8, 1)
    assert slice_count(aggregated) == 2
    assert sum(s.qty for s in build_schedule(aggregated)) == 100


# --- metrics ---

def test_metrics_from_fills():
    parent = ParentOrder(Q=10, T=10, tau=1)
    fills = [
        Fill(order_id=1, counterparty_order_id=9, price=100, qty=4, time=2),
        Fill(order_id=2, counterparty_order_id=8, price=102, qty=6, time=1),
    ]
    metrics = compute_metrics(fills, parent, arrival_mid=100.0)
    assert metrics.pct_comp == 1.0
    assert metrics.wapr == pytest.approx(102.0 * 0.6 + 100.0 * 0.4)
    assert metrics.normalized_price == pytest.approx(metrics.wapr / 100.0)
    assert metrics.completion_curve == [(1, 0.6), (2, 1.0)]
    assert metrics.n_fills == 2


def test_metrics_without_fills():
    metrics = compute_metrics([], ParentOrder(Q=10, T=10, tau=1), arrival_mid=100.0)
    assert metrics.pct_comp == 0.0
    assert metrics.wapr is None and metrics.normalized_price is None


def test_metrics_need_positive_arrival_mid():
    with pytest.raises(ExecutionError):
        compute_metrics([], ParentOrder(Q=10, T=10, tau=1), arrival_mid=0.0)


# --- placement ---

@pytest.mark.parametrize(
    "snapshot,fallback,expected",
    [
        (book(99, 101), None, 99),
        (book(ask=101, last=105), None, 100),
        (book(ask=101, last=97), None, 97),
        (book(ask=101), None, 100),
        (book(last=97), None, 97),
        (book(), 55, 55),
        (book(), None, None),
    ],
)
def test_passive_bid_price(snapshot, fallback, expected):
    assert passive_bid_price(snapshot, fallback) == expected


def test_full_mo_and_full_lo():
    snapshot = book(99, 101)
    assert place_child(Strategy.FULL_MO, 7, snapshot, upward=False) == [
        OrderInstruction(Side.BUY, OrderKind.MARKET, 7)
    ]
    assert place_child(Strategy.FULL_LO, 7, snapshot, upward=True) == [
        OrderInstruction(Side.BUY, OrderKind.LIMIT, 7, 99)
    ]


@pytest.mark.parametrize("upward,kind", [(True, OrderKind.MARKET), (False, OrderKind.LIMIT)])
def test_regime_aware_0_switches_on_regime(upward, kind):
    (order,) = place_child(Strategy.REGIME_AWARE_0, 5, book(99, 101), upward)
    assert order.kind is kind


def test_regime_aware_1_ladder():
    orders = place_child(Strategy.REGIME_AWARE_1, 10, book(100, 102), upward=False, k=3)
    assert [(o.price, o.qty) for o in orders] == [(100, 4), (99, 3), (98, 3)]
    assert place_child(Strategy.REGIME_AWARE_1, 10, book(100, 102), upward=True, k=3) == [
        OrderInstruction(Side.BUY, OrderKind.MARKET, 10)
    ]


def test_regime_aware_1_clamps_low_levels():
    orders = place_child(Strategy.REGIME_AWARE_1, 8, book(2, 4), upward=False, k=4)
    assert [(o.price, o.qty) for o in orders] == [(2, 2), (1, 6)]


def test_regime_aware_1_fewer_shares_than_levels():
    orders = place_child(Strategy.REGIME_AWARE_1, 2, book(50, 52), upward=False, k=5)
    assert [(o.price, o.qty) for o in orders] == [(50, 1), (49, 1)]


def test_empty_child_places_nothing():
    assert place_child(Strategy.FULL_MO, 0, book(99, 101), upward=True) == []


# --- execution agent against a scripted book ---

class Seller(TradingAgent):
    def __init__(self, exchange_id, price, qty):
        super().__init__("Seller", exchange_id)
        self.price = price
        self.qty = qty

    def kernel_starting(self, start_time):
        self.set_wakeup(start_time)

    def wakeup(self, now, tag):
        self.place_order(OrderInstruction(Side.SELL, OrderKind.LIMIT, self.qty, self.price))


def run_against_seller(strategy, regime=UP, seller_qty=1_000, parent=None):
    values = np.full(20, 100.0)
    states = np.zeros(20, dtype=int)
    path = FundamentalPath(dt=1.0, values=values, centers=values.copy(), states=states,
                           trace=RegimeTrace([(0.0, 0)]))
    oracle = Oracle(path, [regime])
    kernel = Kernel(default_latency_ns=10)
    exchange = ExchangeAgent(oracle=oracle)
    kernel.register_agent(exchange)
    kernel.register_agent(Seller(exchange.id, price=101, qty=seller_qty))
    parent = parent or ParentOrder(Q=100, T=10, tau=1, k=2)
    agent = ExecutionAgent("Execution", exchange.id, oracle, parent, strategy, start_offset=1.0)
    kernel.register_agent(agent)
    kernel.run(oracle.horizon_ns)
    return agent


def test_market_orders_complete_at_the_ask():
    agent = run_against_seller(Strategy.FULL_MO)
    metrics = agent.metrics()
    assert len(agent.instructions) == 10
    assert metrics.pct_comp == 1.0
    assert metrics.wapr == 101.0
    # Only asks rest, so the mid falls back to the ask
    assert metrics.normalized_price == 1.0
    assert agent.holdings == 100


def test_passive_orders_below_the_ask_stay_unfilled():
    agent = run_against_seller(Strategy.FULL_LO)
    metrics = agent.metrics()
    assert all(i.kind is OrderKind.LIMIT and i.price == 100 for _, i in agent.instructions)
    assert metrics.pct_comp == 0.0
    assert metrics.normalized_price is None
    assert sum(agent.open_orders.values()) == 100


def test_regime_aware_1_fires_on_aggregated_period():
    agent = run_against_seller(Strategy.REGIME_AWARE_1)
    assert len(agent.schedule) == 5
    assert [i.qty for _, i in agent.instructions] == [20] * 5
    assert agent.metrics().pct_comp == 1.0


def test_regime_aware_1_with_aggregated_period_near_the_horizon():
    agent = run_against_seller(Strategy.REGIME_AWARE_1, parent=ParentOrder(Q=100, T=10, tau=2, k=4))
    assert [s.fire_time for s in agent.schedule] == [0, 8]
    assert [i.qty for _, i in agent.instructions] == [50, 50]
    assert agent.metrics().pct_comp == 1.0


def test_child_log_records_each_ack():
    agent = run_against_seller(Strategy.FULL_LO)
    log = agent.child_log_frame()
    assert list(log["child"]) == list(range(10))
    assert log["accepted"].all()
    assert (log["rested_qty"] == 10).all()
    assert not log["unfilled"].any()
    assert log["order_id"].is_unique


def test_child_log_flags_market_orders_that_run_dry():
    agent = run_against_seller(Strategy.FULL_MO, seller_qty=50)
    log = agent.child_log_frame()
    assert agent.metrics().pct_comp == 0.5
    assert list(log["unfilled"]) == [False] * 5 + [True] * 5
    assert list(log["cancelled_qty"]) == [0] * 5 + [10] * 5


# --- full episodes on one-regime days ---

def one_regime_config(config, regime):
    return config.model_copy(update={"fundamental": FundamentalConfig(regimes=[regime])})


def test_regime_aware_0_matches_full_mo_on_an_upward_day(small_experiment_config):
    config = one_regime_config(small_experiment_config, UP)
    mo = run_episode(config, Strategy.FULL_MO, seed=3, record_event_log=True)
    aware = run_episode(config, Strategy.REGIME_AWARE_0, seed=3, record_event_log=True)
    assert mo.instructions == aware.instructions
    assert mo.event_log == aware.event_log
    assert mo.metrics.pct_comp == aware.metrics.pct_comp
    assert mo.metrics.wapr == aware.metrics.wapr
    assert mo.regime_switch_count == 0


def test_regime_aware_0_matches_full_lo_on_a_downward_day(small_experiment_config):
    config = one_regime_config(small_experiment_config, DOWN)
    lo = run_episode(config, Strategy.FULL_LO, seed=3, record_event_log=True)
    aware = run_episode(config, Strategy.REGIME_AWARE_0, seed=3, record_event_log=True)
    assert all(i.kind is OrderKind.LIMIT for _, i in aware.instructions)
    assert lo.instructions == aware.instructions
    assert lo.event_log == aware.event_log
    assert lo.metrics.pct_comp == aware.metrics.pct_comp
    assert lo.metrics.wapr == aware.metrics.wapr
    assert lo.regime_switch_count == 0
