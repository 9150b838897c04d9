from regime_market.services.agents.exchange_agent import ExchangeAgent
from regime_market.services.agents.market_maker import MarketMaker, ladder_orders
from regime_market.services.agents.momentum_agent import MomentumAgent, momentum_orders
from regime_market.services.agents.noise_agent import NoiseAgent, noise_orders
from regime_market.services.agents.oracle import Oracle
from regime_market.services.agents.population import BackgroundPopulation, build_background_population
from regime_market.services.agents.trading_agent import TradingAgent
from regime_market.services.agents.value_agent import ValueAgent, value_orders
