"""Linearized comparative statics of the oil market.

Two policies are evaluated around a baseline equilibrium: a change in the EU
road-fuel duty and a lump-sum change in EU disposable income.  Both work
through the same market-clearing condition, so they share the denominator
built by :func:`market_slope`.

Units throughout: prices and taxes in EUR per liter, quantities in Ml/d,
money in MEUR/d, income in MEUR/d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from enum import Enum

from .errors import DegenerateElasticities, MissingIncome, ParameterError
from .units import annualize


class Horizon(str, Enum):
    VERY_SHORT_RUN = "very_short_run"
    SHORT_RUN = "short_run"
    LONG_RUN = "long_run"

    @classmethod
    def parse(cls, text: str | Horizon) -> Horizon:
        if isinstance(text, Horizon):
            return text
        key = str(text).strip().lower()
        aliases = {"vsr": cls.VERY_SHORT_RUN, "sr": cls.SHORT_RUN, "lr": cls.LONG_RUN}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ParameterError("horizon", f"unknown horizon {text!r}") from None

    @property
    def short(self) -> str:
        return {"very_short_run": "vsr", "short_run": "sr", "long_run": "lr"}[self.value]


class CostModel(str, Enum):
    ADDITIVE = "additive"
    PROPORTIONAL = "proportional"

    @classmethod
    def parse(cls, text: str | CostModel) -> CostModel:
        try:
            return cls(text)
        except ValueError:
            raise ParameterError("cost_model", f"unknown cost model {text!r}") from None


@dataclass(frozen=True)
class ModelParams:
    """One parameterization of the market for one horizon and cost model.

    ``c`` is used by the additive cost model and ``z`` by the proportional
    one; both may be populated, ``cost_model`` decides which is read.
    ``e`` (extraction cost) is per liter.  There is deliberately no
    rest-of-world VAT field: none of the linearized responses depend on it.
    """

    eps_d_eu: float
    eps_d_row: float
    eps_s_ru: float
    eps_s_row: float
    eps_i_eu: float
    p: float
    tau: float
    c: float
    z: float
    v_eu: float
    e: float
    x: float
    y: float
    s_ru: float
    d_eu: float
    income_eu: float | None = None
    cost_model: CostModel = CostModel.ADDITIVE
    horizon: Horizon | None = None

    def __post_init__(self):
        object.__setattr__(self, "cost_model", CostModel.parse(self.cost_model))
        if self.horizon is not None:
            object.__setattr__(self, "horizon", Horizon.parse(self.horizon))
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, float) and not math.isfinite(val):
                raise ParameterError(f.name, "must be finite")
        if self.p <= 0:
            raise ParameterError("p", "oil price must be positive")
        if self.tau < 0:
            raise ParameterError("tau", "duty must be nonnegative")
        if self.v_eu < 0:
            raise ParameterError("v_eu", "VAT rate must be nonnegative")
        if not 0 < self.x <= 1:
            raise ParameterError("x", "EU demand share must lie in (0, 1]")
        if not 0 <= self.y <= 1:
            raise ParameterError("y", "Russian supply share must lie in [0, 1]")
        for name in ("eps_d_eu", "eps_d_row"):
            if getattr(self, name) > 0:
                raise ParameterError(name, "demand elasticity must be <= 0")
        for name in ("eps_s_ru", "eps_s_row", "eps_i_eu"):
            if getattr(self, name) < 0:
                raise ParameterError(name, "elasticity must be >= 0")
        for name in ("s_ru", "d_eu"):
            if getattr(self, name) < 0:
                raise ParameterError(name, "quantity must be nonnegative")
        if self.income_eu is not None and self.income_eu <= 0:
            raise ParameterError("income_eu", "income must be positive")
        if self.consumer_price <= 0:
            field = "c" if self.cost_model is CostModel.ADDITIVE else "z"
            raise ParameterError(field, "consumer price must be positive")
        if self.row_price <= 0:
            field = "c" if self.cost_model is CostModel.ADDITIVE else "z"
            raise ParameterError(field, "rest-of-world pre-VAT price must be positive")

    @property
    def proportional(self) -> bool:
        return self.cost_model is CostModel.PROPORTIONAL

    @property
    def pre_vat_price(self) -> float:
        """EU fuel price before VAT: p + c + tau, or (1+z)p + tau."""
        if self.proportional:
            return (1 + self.z) * self.p + self.tau
        return self.p + self.c + self.tau

    @property
    def consumer_price(self) -> float:
        return (1 + self.v_eu) * self.pre_vat_price

    @property
    def row_price(self) -> float:
        """Rest-of-world pre-VAT price of oil products."""
        if self.proportional:
            return (1 + self.z) * self.p
        return self.p + self.c

    @property
    def cost_factor(self) -> float:
        """How much one EUR/l on the oil price moves the pre-VAT fuel price."""
        return 1 + self.z if self.proportional else 1.0

    def with_overrides(self, **changes) -> ModelParams:
        return replace(self, **changes)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            val = getattr(self, f.name)
            out[f.name] = val.value if isinstance(val, Enum) else val
        return out

    @classmethod
    def from_dict(cls, data: dict) -> ModelParams:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParameterError(sorted(unknown)[0], "unknown parameter")
        missing = [f.name for f in fields(cls) if f.name not in data
                   and f.name not in ("income_eu", "cost_model", "horizon")]
        if missing:
            raise ParameterError(missing[0], "missing parameter")
        clean = {}
        for key, val in data.items():
            if key in ("cost_model", "horizon") or (key == "income_eu" and val is None):
                clean[key] = val
                continue
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ParameterError(key, f"expected a number, got {val!r}")
            clean[key] = float(val)
        return cls(**clean)


@dataclass(frozen=True)
class PolicyShock:
    """A duty change (EUR/l, negative is a cut) or an income change (MEUR/d)."""

    kind: str
    delta_tau: float | None = None
    delta_income: float | None = None

    def __post_init__(self):
        if self.kind == "duty_change":
            if self.delta_tau is None or self.delta_income is not None:
                raise ParameterError("delta_tau", "duty shock needs delta_tau only")
        elif self.kind == "income_change":
            if self.delta_income is None or self.delta_tau is not None:
                raise ParameterError("delta_income", "income shock needs delta_income only")
        else:
            raise ParameterError("kind", f"unknown shock kind {self.kind!r}")

    @classmethod
    def duty(cls, delta_tau: float) -> PolicyShock:
        return cls("duty_change", delta_tau=delta_tau)

    @classmethod
    def consumer_cut(cls, cents: float, v_eu: float) -> PolicyShock:
        """A cut of ``cents`` per liter as seen by consumers, VAT included."""
        return cls.duty(duty_change_for_cut(cents, v_eu))

    @classmethod
    def income(cls, delta_income: float) -> PolicyShock:
        return cls("income_change", delta_income=delta_income)


@dataclass(frozen=True)
class PolicyResponse:
    d_oil_price: float
    d_fuel_price_eu: float
    d_fiscal_eu: float
    d_profit_ru: float
    d_profit_ru_yearly: float | None

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def duty_change_for_cut(cents: float, v_eu: float) -> float:
    """Duty change (EUR/l) that lowers the VAT-inclusive price by ``cents``."""
    return -(cents / 100.0) / (1 + v_eu)


def _yearly(params: ModelParams, per_day: float) -> float | None:
    if params.horizon is Horizon.VERY_SHORT_RUN:
        return None
    return annualize(per_day)


def market_slope(params: ModelParams) -> float:
    """Denominator shared by dp/dtau and dp/dI.

    Aggregate supply response minus the share-weighted demand responses, with
    each demand elasticity scaled by how strongly the oil price moves the
    price that consumer actually faces.
    """
    pr = params
    supply = pr.y * pr.eps_s_ru + (1 - pr.y) * pr.eps_s_row
    eu = pr.x * (pr.cost_factor * pr.p / pr.pre_vat_price) * pr.eps_d_eu
    row_ratio = 1.0 if pr.proportional else pr.p / pr.row_price
    row = (1 - pr.x) * row_ratio * pr.eps_d_row
    den = supply - eu - row
    if den == 0:
        raise DegenerateElasticities(
            "supply and demand elasticities are all zero; the price is indeterminate")
    return den


def price_response_to_tax(params: ModelParams) -> float:
    """dp/dtau: how the producer oil price moves with the EU duty."""
    num = params.x * (params.p / params.pre_vat_price) * params.eps_d_eu
    return num / market_slope(params)


def price_response_to_income(params: ModelParams) -> float:
    """dp/dI in EUR/l per MEUR/d of EU disposable income."""
    if params.income_eu is None:
        raise MissingIncome("income_eu must be set to evaluate income effects")
    return (params.p / params.income_eu) * params.x * params.eps_i_eu / market_slope(params)


def fuel_price_change(params: ModelParams, d_oil_price: float, delta_tau: float) -> float:
    return (1 + params.v_eu) * (params.cost_factor * d_oil_price + delta_tau)


def fiscal_burden(params: ModelParams, dp_dtau: float, delta_tau: float) -> float:
    """Linearized change in EU duty+VAT revenue, MEUR/d (negative is a loss)."""
    pr = params
    base = pr.pre_vat_price
    tax_share = (pr.tau + pr.v_eu * base) / base
    pass_through = 1 + pr.cost_factor * dp_dtau
    return (1 + (pr.v_eu + tax_share * pr.eps_d_eu) * pass_through) * pr.d_eu * delta_tau


def profit_change_from_price(params: ModelParams, d_oil_price: float) -> float:
    """Change in Russian oil profits (MEUR/d) for an oil price change."""
    margin = (params.p - params.e) / params.p
    return (1 + margin * params.eps_s_ru) * params.s_ru * d_oil_price


def evaluate_duty_change(params: ModelParams, delta_tau: float) -> PolicyResponse:
    dp_dtau = price_response_to_tax(params)
    dp = dp_dtau * delta_tau
    profit = profit_change_from_price(params, dp)
    return PolicyResponse(
        d_oil_price=dp,
        d_fuel_price_eu=fuel_price_change(params, dp, delta_tau),
        d_fiscal_eu=fiscal_burden(params, dp_dtau, delta_tau),
        d_profit_ru=profit,
        d_profit_ru_yearly=_yearly(params, profit),
    )


def evaluate_tax_cut(params: ModelParams, consumer_cut_cents: float) -> PolicyResponse:
    """Effects of cutting the VAT-inclusive fuel price by ``consumer_cut_cents``."""
    if consumer_cut_cents < 0:
        raise ParameterError("cut_cents", "tax cut must be nonnegative")
    return evaluate_duty_change(params, duty_change_for_cut(consumer_cut_cents, params.v_eu))


def evaluate_transfer(params: ModelParams, transfer: float) -> PolicyResponse:
    """Effects of paying ``transfer`` MEUR/d to EU households.

    The fiscal change is minus the transfer by construction.
    """
    if transfer < 0:
        raise ParameterError("transfer", "transfer must be nonnegative")
    dp = price_response_to_income(params) * transfer
    profit = profit_change_from_price(params, dp)
    return PolicyResponse(
        d_oil_price=dp,
        d_fuel_price_eu=(1 + params.v_eu) * params.cost_factor * dp,
        d_fiscal_eu=-transfer,
        d_profit_ru=profit,
        d_profit_ru_yearly=_yearly(params, profit),
    )


def evaluate(params: ModelParams, shock: PolicyShock) -> PolicyResponse:
    if shock.kind == "duty_change":
        return evaluate_duty_change(params, shock.delta_tau)
    return evaluate_transfer(params, shock.delta_income)


def fiscal_equivalent_transfer(params: ModelParams, consumer_cut_cents: float) -> float:
    """Transfer (MEUR/d) costing the budget as much as the given tax cut."""
    return -evaluate_tax_cut(params, consumer_cut_cents).d_fiscal_eu
