"""Regime-switching limit-order-book market simulator."""

__version__ = "0.1.0"
