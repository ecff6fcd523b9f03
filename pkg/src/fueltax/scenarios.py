"""Calibrated parameter sets for the three horizons, sweep bounds and
context constants used to put profit figures in perspective."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ParameterError
from .model import CostModel, Horizon, ModelParams
from .units import barrels_to_liters, eur_per_barrel_to_per_liter, oil_price_per_liter

__all__ = [
    "Horizon", "Quantities", "SensitivityBounds", "GridEntry", "ContextConstants",
    "QUANTITIES", "BOUNDS", "CONTEXT", "PUBLISHED_TRANSFERS", "DEFAULT_INCOME",
    "baseline", "derive_shares", "sensitivity_grid", "context_report",
]

# EU aggregate disposable income, MEUR/d.  Not published alongside the other
# inputs; recovered by inverting the transfer results for all three horizons.
DEFAULT_INCOME = 42_000.0

OIL_PRICE_USD_PER_BARREL = 110.0
FX_EUR_PER_USD = 0.9
EXTRACTION_COST_EUR_PER_BARREL = 17.0
DUTY = 0.6
OTHER_COST = 0.48
PROPORTIONAL_COST = 0.83
VAT_EU = 0.2


@dataclass(frozen=True)
class Quantities:
    """Baseline volumes in Mb/d.  ``d_row`` balances the market."""

    d_eu: float
    s_ru: float
    s_row: float

    @property
    def total(self) -> float:
        return self.s_ru + self.s_row

    @property
    def d_row(self) -> float:
        return self.total - self.d_eu


# vSR treats the EU as an isolated market: 4.095 Mb/d of normal Russian
# deliveries less 1.5 Mb/d of lost exports.
QUANTITIES = {
    Horizon.VERY_SHORT_RUN: Quantities(d_eu=4.8, s_ru=2.595, s_row=7.6),
    Horizon.SHORT_RUN: Quantities(d_eu=5.6, s_ru=5.5, s_row=92.0),
    Horizon.LONG_RUN: Quantities(d_eu=5.7, s_ru=8.0, s_row=92.0),
}

_ELASTICITIES = {
    # eps_d_eu, eps_d_row, eps_s_ru, eps_s_row, eps_i_eu
    Horizon.VERY_SHORT_RUN: (-0.25, -0.125, 0.0, 0.0, 1.0),
    Horizon.SHORT_RUN: (-0.25, -0.125, 0.0, 0.0, 1.0),
    Horizon.LONG_RUN: (-0.9, -0.45, 0.13, 0.13, 1.0),
}

# Published (rounded) shares; the linear model uses these as given.
_SHARES = {
    Horizon.VERY_SHORT_RUN: (0.48, 0.25),
    Horizon.SHORT_RUN: (0.057, 0.056),
    Horizon.LONG_RUN: (0.057, 0.08),
}

# Transfers (MEUR/d) the published transfer tables are tied to, i.e. the tax
# cut's fiscal cost at display precision.
PUBLISHED_TRANSFERS = {
    CostModel.ADDITIVE: {Horizon.VERY_SHORT_RUN: 140.0, Horizon.SHORT_RUN: 170.0,
                         Horizon.LONG_RUN: 115.0},
    CostModel.PROPORTIONAL: {Horizon.VERY_SHORT_RUN: 141.0, Horizon.SHORT_RUN: 166.0,
                             Horizon.LONG_RUN: 115.0},
}


def baseline(h: Horizon | str, cost_model: CostModel | str = CostModel.ADDITIVE) -> ModelParams:
    h = Horizon.parse(h)
    eps_d_eu, eps_d_row, eps_s_ru, eps_s_row, eps_i_eu = _ELASTICITIES[h]
    x, y = _SHARES[h]
    q = QUANTITIES[h]
    return ModelParams(
        eps_d_eu=eps_d_eu, eps_d_row=eps_d_row, eps_s_ru=eps_s_ru,
        eps_s_row=eps_s_row, eps_i_eu=eps_i_eu,
        p=round(oil_price_per_liter(OIL_PRICE_USD_PER_BARREL, FX_EUR_PER_USD), 2),
        tau=DUTY, c=OTHER_COST, z=PROPORTIONAL_COST, v_eu=VAT_EU,
        e=round(eur_per_barrel_to_per_liter(EXTRACTION_COST_EUR_PER_BARREL), 10),
        x=x, y=y,
        s_ru=barrels_to_liters(q.s_ru), d_eu=barrels_to_liters(q.d_eu),
        income_eu=DEFAULT_INCOME,
        cost_model=CostModel.parse(cost_model), horizon=h,
    )


def derive_shares(d_eu: float, d_row: float, s_ru: float, s_row: float,
                  rtol: float = 1e-9) -> tuple[float, float]:
    """EU road-fuel share of demand and Russian share of supply."""
    demand = d_eu + d_row
    supply = s_ru + s_row
    if demand <= 0 or supply <= 0:
        raise ParameterError("quantities", "totals must be positive")
    if abs(demand - supply) > rtol * max(demand, supply):
        raise ParameterError("quantities",
                             f"demand {demand} and supply {supply} do not clear")
    return d_eu / demand, s_ru / supply


@dataclass(frozen=True)
class SensitivityBounds:
    """(low, base, high) per toggle.  The low divisor is 3, the high one 1.5."""

    eps_d_eu: tuple[float, float, float]
    eps_d_row_divisor: tuple[float, float, float]
    eps_s_ru: tuple[float, float, float]
    eps_s_row: tuple[float, float, float]
    s_ru_mbd: tuple[float, float, float]


BOUNDS = {
    Horizon.VERY_SHORT_RUN: SensitivityBounds(
        eps_d_eu=(-0.1, -0.25, -0.3), eps_d_row_divisor=(3.0, 2.0, 1.5),
        eps_s_ru=(0.0, 0.0, 0.0), eps_s_row=(0.0, 0.0, 0.0),
        s_ru_mbd=(1.595, 2.595, 4.095)),
    Horizon.SHORT_RUN: SensitivityBounds(
        eps_d_eu=(-0.2, -0.25, -0.3), eps_d_row_divisor=(3.0, 2.0, 1.5),
        eps_s_ru=(0.0, 0.0, 0.1), eps_s_row=(0.0, 0.0, 0.1),
        s_ru_mbd=(5.0, 5.5, 8.0)),
    Horizon.LONG_RUN: SensitivityBounds(
        eps_d_eu=(-0.7, -0.9, -1.1), eps_d_row_divisor=(3.0, 2.0, 1.5),
        eps_s_ru=(0.05, 0.13, 0.2), eps_s_row=(0.05, 0.13, 0.2),
        s_ru_mbd=(8.0, 8.0, 8.0)),
}

TOGGLES = ("eps_d_eu", "eps_d_row_divisor", "eps_s_ru", "eps_s_row", "s_ru_mbd")


@dataclass(frozen=True)
class GridEntry:
    """One corner of the sweep: which end ("low"/"high") each toggle took."""

    settings: tuple[str, ...]
    params: ModelParams

    def label(self) -> dict[str, str]:
        return dict(zip(TOGGLES, self.settings))


def sensitivity_grid(h: Horizon | str, cost_model: CostModel | str = CostModel.ADDITIVE
                     ) -> list[GridEntry]:
    """All 32 low/high corners, in toggle order with low before high.

    Changing Russian exports keeps demand, x and rest-of-world supply at the
    baseline and recomputes only Russia's supply share.  Where a bound's low
    and high values coincide the corresponding entries repeat numerically.
    """
    h = Horizon.parse(h)
    base = baseline(h, cost_model)
    bounds = BOUNDS[h]
    s_row = QUANTITIES[h].s_row
    entries = []
    for settings in itertools.product(("low", "high"), repeat=len(TOGGLES)):
        pick = {name: getattr(bounds, name)[0 if s == "low" else 2]
                for name, s in zip(TOGGLES, settings)}
        params = base.with_overrides(
            eps_d_eu=pick["eps_d_eu"],
            eps_d_row=pick["eps_d_eu"] / pick["eps_d_row_divisor"],
            eps_s_ru=pick["eps_s_ru"],
            eps_s_row=pick["eps_s_row"],
            s_ru=barrels_to_liters(pick["s_ru_mbd"]),
            y=pick["s_ru_mbd"] / (pick["s_ru_mbd"] + s_row),
        )
        entries.append(GridEntry(settings, params))
    return entries


@dataclass(frozen=True)
class ContextConstants:
    gdp_ru: float = 3700.0          # MEUR/d, pre-invasion
    military_ru: float = 160.0      # MEUR/d
    soldier_salary: float = 7500.0  # EUR/yr
    police_salary: float = 7200.0
    troll_salary: float = 6800.0
    mlrs_unit: float = 2_000_000.0  # EUR per launcher
    tank_upgrade: float = 211_000.0


CONTEXT = ContextConstants()


def context_report(profit: float, constants: ContextConstants = CONTEXT) -> dict:
    """What one day of extra profit (MEUR/d) amounts to."""
    if profit < 0:
        raise ParameterError("profit", "must be nonnegative")
    eur = profit * 1e6
    return {
        "profit_meur_per_day": profit,
        "gdp_share": profit / constants.gdp_ru,
        "military_share": profit / constants.military_ru,
        "soldiers": math.floor(eur / constants.soldier_salary),
        "police": math.floor(eur / constants.police_salary),
        "trolls": math.floor(eur / constants.troll_salary),
        "mlrs": math.floor(eur / constants.mlrs_unit),
        "tank_upgrades": math.floor(eur / constants.tank_upgrade),
    }
