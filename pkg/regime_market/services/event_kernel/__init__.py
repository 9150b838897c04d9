from regime_market.services.event_kernel.base_agent import BaseAgent
from regime_market.services.event_kernel.kernel import Kernel, KernelSummary
