"""Partial-equilibrium model of how EU fuel-tax cuts and cash transfers move
the oil price, EU fuel prices, EU tax revenue and Russian oil profits."""

from .model import (CostModel, Horizon, ModelParams, PolicyResponse, PolicyShock,
                    evaluate, evaluate_tax_cut, evaluate_transfer)
from .scenarios import baseline

__all__ = [
    "CostModel", "Horizon", "ModelParams", "PolicyResponse", "PolicyShock",
    "baseline", "evaluate", "evaluate_tax_cut", "evaluate_transfer",
]
__version__ = "0.1.0"
