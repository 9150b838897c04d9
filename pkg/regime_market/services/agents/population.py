from dataclasses import dataclass, field
from typing import List

from regime_market.schemas.config_schema import PopulationConfig
from regime_market.services.agents.exchange_agent import ExchangeAgent
from regime_market.services.agents.market_maker import MarketMaker
from regime_market.services.agents.momentum_agent import MomentumAgent
from regime_market.services.agents.noise_agent import NoiseAgent
from regime_market.services.agents.oracle import Oracle
from regime_market.services.agents.value_agent import ValueAgent
from regime_market.services.event_kernel.kernel import Kernel
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("Population")


@dataclass
class BackgroundPopulation:
    exchange: ExchangeAgent
    market_makers: List[MarketMaker] = field(default_factory=list)
    value_agents: List[ValueAgent] = field(default_factory=list)
    momentum_agents: List[MomentumAgent] = field(default_factory=list)
    noise_agents: List[NoiseAgent] = field(default_factory=list)

    @property
    def size(self) -> int:
        return 1 + len(self.market_makers) + len(self.value_agents) + len(self.momentum_agents) + len(self.noise_agents)


def build_background_population(config: PopulationConfig, oracle: Oracle, kernel: Kernel) -> BackgroundPopulation:
    """
    Registers the exchange and the background traders with `kernel`.

    Registration order is fixed (exchange, market makers, value, momentum,
    noise) so agent ids and therefore agent random streams do not depend on
    what gets registered afterwards.
    """
    reference_price = config.initial_price or int(round(oracle.fundamental_value(0)))

    exchange = ExchangeAgent(oracle=oracle)
    kernel.register_agent(exchange)
    population = BackgroundPopulation(exchange=exchange)

    for i in range(config.market_maker.count):
        agent = MarketMaker(f"MarketMaker_{i}", exchange.id, config.market_maker, reference_price)
        kernel.register_agent(agent)
        population.market_makers.append(agent)
    for i in range(config.value.count):
        agent = ValueAgent(f"Value_{i}", exchange.id, oracle, config.value)
        kernel.register_agent(agent)
        population.value_agents.append(agent)
    for i in range(config.momentum.count):
        agent = MomentumAgent(f"Momentum_{i}", exchange.id, config.momentum)
        kernel.register_agent(agent)
        population.momentum_agents.append(agent)
    for i in range(config.noise.count):
        agent = NoiseAgent(f"Noise_{i}", exchange.id, config.noise, reference_price)
        kernel.register_agent(agent)
        population.noise_agents.append(agent)

    logger.debug_print(
        f"Registered {population.size} background agents around reference price {reference_price}"
    )
    return population
