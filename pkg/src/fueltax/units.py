"""Volume, price and time conventions.

A barrel of crude is taken to yield 170 liters of saleable fuel products, so
every per-liter price and every Ml/d quantity in the package is a barrel
figure divided (or multiplied) by 170.  A year is 365 days.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ParameterError

LITERS_PER_BARREL = 170.0
DAYS_PER_YEAR = 365.0


class VolumeUnit(str, Enum):
    MLD = "million-liters-per-day"
    MBD = "million-barrels-per-day"


class MoneyUnit(str, Enum):
    PER_DAY = "MEUR-per-day"
    PER_YEAR = "MEUR-per-year"


def barrels_to_liters(mbd: float) -> float:
    """Mb/d -> Ml/d."""
    if mbd < 0:
        raise ParameterError("volume", f"must be nonnegative, got {mbd}")
    return mbd * LITERS_PER_BARREL


def liters_to_barrels(mld: float) -> float:
    """Ml/d -> Mb/d."""
    if mld < 0:
        raise ParameterError("volume", f"must be nonnegative, got {mld}")
    return mld / LITERS_PER_BARREL


def oil_price_per_liter(usd_per_barrel: float, fx_eur_per_usd: float) -> float:
    """Crude price in USD/b converted to EUR per liter of fuel."""
    if usd_per_barrel <= 0:
        raise ParameterError("usd_per_barrel", "must be positive")
    if fx_eur_per_usd <= 0:
        raise ParameterError("fx_eur_per_usd", "must be positive")
    return usd_per_barrel * fx_eur_per_usd / LITERS_PER_BARREL


def eur_per_barrel_to_per_liter(eur_per_barrel: float) -> float:
    return eur_per_barrel / LITERS_PER_BARREL


def annualize(meur_per_day: float) -> float:
    return meur_per_day * DAYS_PER_YEAR


@dataclass(frozen=True)
class VolumeRate:
    value: float
    unit: VolumeUnit = VolumeUnit.MLD

    def __post_init__(self):
        if self.value < 0:
            raise ParameterError("volume", f"must be nonnegative, got {self.value}")

    def to(self, unit: VolumeUnit) -> VolumeRate:
        if unit == self.unit:
            return self
        if unit == VolumeUnit.MLD:
            return VolumeRate(barrels_to_liters(self.value), unit)
        return VolumeRate(liters_to_barrels(self.value), unit)


@dataclass(frozen=True)
class MoneyRate:
    value: float
    unit: MoneyUnit = MoneyUnit.PER_DAY

    def to(self, unit: MoneyUnit) -> MoneyRate:
        if unit == self.unit:
            return self
        if unit == MoneyUnit.PER_YEAR:
            return MoneyRate(annualize(self.value), unit)
        return MoneyRate(self.value / DAYS_PER_YEAR, unit)
