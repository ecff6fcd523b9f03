"""Exact market clearing with constant-elasticity curves.

The linearized model only needs elasticities at the baseline.  Extending each
curve globally as ``q = q0 * (price / price0) ** eps`` gives a concrete
nonlinear market that reproduces every baseline quantity and elasticity; its
equilibrium price is found by bisection and compared with the linear
approximation.

Market size is pinned by EU road-fuel demand and its share ``x``; Russia's
share of the clearing supply is ``y``.  Russian profits are booked on the
export volume ``s_ru`` scaled along the same supply curve, exactly the
quantity the linear profit formula uses.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import model
from .errors import CalibrationError, NoBracket, NonConvergence
from .model import Horizon, ModelParams, PolicyResponse, PolicyShock
from .units import annualize

BRACKET_FACTOR = 100.0
RTOL = 1e-12
MAX_ITER = 200
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class EquilibriumSolution:
    price: float
    d_eu: float
    d_row: float
    s_ru: float
    s_row: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class IsoelasticMarket:
    baseline: ModelParams
    d_eu0: float
    d_row0: float
    s_ru0: float
    s_row0: float
    f0: float
    q0: float
    v_row: float = 0.0

    # curves -----------------------------------------------------------

    def eu_price(self, p: float, tau: float) -> float:
        b = self.baseline
        if b.proportional:
            return (1 + b.v_eu) * ((1 + b.z) * p + tau)
        return (1 + b.v_eu) * (p + b.c + tau)

    def row_price(self, p: float) -> float:
        b = self.baseline
        pre = (1 + b.z) * p if b.proportional else p + b.c
        return (1 + self.v_row) * pre

    def demand_eu(self, p: float, tau: float, income: float) -> float:
        b = self.baseline
        d = self.d_eu0 * (self.eu_price(p, tau) / self.f0) ** b.eps_d_eu
        if b.eps_i_eu != 0:
            d *= (income / b.income_eu) ** b.eps_i_eu
        return d

    def demand_row(self, p: float) -> float:
        return self.d_row0 * (self.row_price(p) / self.q0) ** self.baseline.eps_d_row

    def supply_ru(self, p: float) -> float:
        return self.s_ru0 * (p / self.baseline.p) ** self.baseline.eps_s_ru

    def supply_row(self, p: float) -> float:
        return self.s_row0 * (p / self.baseline.p) ** self.baseline.eps_s_row

    def excess_demand(self, p: float, tau: float, income: float) -> float:
        return (self.demand_eu(p, tau, income) + self.demand_row(p)
                - self.supply_ru(p) - self.supply_row(p))

    # accounting -------------------------------------------------------

    def russian_exports(self, p: float) -> float:
        return self.baseline.s_ru * (p / self.baseline.p) ** self.baseline.eps_s_ru

    def russian_profit(self, p: float) -> float:
        return (p - self.baseline.e) * self.russian_exports(p)

    def tax_revenue(self, p: float, tau: float, income: float) -> float:
        b = self.baseline
        producer = (1 + b.z) * p if b.proportional else p + b.c
        return (b.v_eu * producer + (1 + b.v_eu) * tau) * self.demand_eu(p, tau, income)


def calibrate(params: ModelParams, v_row: float = 0.0) -> IsoelasticMarket:
    """Build curves passing through the baseline point of ``params``."""
    if params.income_eu is None:
        raise CalibrationError("income_eu must be set to calibrate the income effect")
    if params.d_eu <= 0:
        raise CalibrationError("EU road-fuel demand must be positive")
    if v_row < 0:
        raise CalibrationError("v_row must be nonnegative")
    total = params.d_eu / params.x
    d_row0 = total - params.d_eu
    s_ru0 = params.y * total
    s_row0 = total - s_ru0
    if min(d_row0, s_ru0, s_row0) < 0:
        raise CalibrationError("shares and quantities cannot clear")
    mismatch = abs(params.d_eu + d_row0 - s_ru0 - s_row0)
    if mismatch > 1e-9 * total:
        raise CalibrationError(f"baseline does not clear (gap {mismatch:.3e} Ml/d)")
    return IsoelasticMarket(
        baseline=params, d_eu0=params.d_eu, d_row0=d_row0, s_ru0=s_ru0, s_row0=s_row0,
        f0=params.consumer_price, q0=(1 + v_row) * params.row_price, v_row=v_row)


def solve_price(market: IsoelasticMarket, tau: float, income: float | None = None
                ) -> EquilibriumSolution:
    """Bisect the excess demand on [p0/100, 100 p0]."""
    b = market.baseline
    if income is None:
        income = b.income_eu
    p0 = b.p

    def g(p):
        return market.excess_demand(p, tau, income)

    lo, hi = p0 / BRACKET_FACTOR, p0 * BRACKET_FACTOR
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0 > g_hi):
        raise NoBracket(
            f"excess demand does not change sign on [{lo:.4g}, {hi:.4g}] "
            f"(values {g_lo:.3e}, {g_hi:.3e})")

    price = p0 if g(p0) == 0 else None
    it = 0
    while price is None:
        it += 1
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0:
            price = mid
        elif g_mid > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= RTOL * mid:
            price = 0.5 * (lo + hi)
        elif it >= MAX_ITER:
            raise NonConvergence(f"bisection stopped after {it} iterations", g(mid))

    sol = EquilibriumSolution(
        price=price,
        d_eu=market.demand_eu(price, tau, income),
        d_row=market.demand_row(price),
        s_ru=market.supply_ru(price),
        s_row=market.supply_row(price),
        residual=g(price),
        iterations=it,
    )
    total = sol.d_eu + sol.d_row
    if abs(sol.residual) >= RESIDUAL_RTOL * total:
        raise NonConvergence("root found but market does not clear", sol.residual)
    return sol


def solve_shock(market: IsoelasticMarket, shock: PolicyShock
                ) -> tuple[EquilibriumSolution, EquilibriumSolution, float, float]:
    """Solve before and after ``shock``; also return the post-shock tau and income."""
    b = market.baseline
    tau1, inc1 = b.tau, b.income_eu
    if shock.kind == "duty_change":
        tau1 += shock.delta_tau
    else:
        inc1 += shock.delta_income
    before = solve_price(market, b.tau, b.income_eu)
    after = solve_price(market, tau1, inc1)
    return before, after, tau1, inc1


def exact_policy_effects(market: IsoelasticMarket, shock: PolicyShock) -> PolicyResponse:
    """Exact deltas between the baseline and the post-policy equilibrium."""
    return _effects(market, shock)[0]


def _effects(market, shock):
    b = market.baseline
    before, after, tau1, inc1 = solve_shock(market, shock)
    p0, p1 = before.price, after.price
    if shock.kind == "duty_change":
        d_fiscal = (market.tax_revenue(p1, tau1, inc1)
                    - market.tax_revenue(p0, b.tau, b.income_eu))
    else:
        d_fiscal = -shock.delta_income
    d_profit = market.russian_profit(p1) - market.russian_profit(p0)
    response = PolicyResponse(
        d_oil_price=p1 - p0,
        d_fuel_price_eu=market.eu_price(p1, tau1) - market.eu_price(p0, b.tau),
        d_fiscal_eu=d_fiscal,
        d_profit_ru=d_profit,
        d_profit_ru_yearly=None if b.horizon is Horizon.VERY_SHORT_RUN else annualize(d_profit),
    )
    return response, after


@dataclass(frozen=True)
class OracleComparison:
    linear: PolicyResponse
    exact: PolicyResponse
    iterations: int

    def gap(self, field: str) -> float:
        """Relative gap |linear - exact| / |exact|; 0 when both vanish."""
        lin, ex = getattr(self.linear, field), getattr(self.exact, field)
        if ex == 0:
            return 0.0 if lin == 0 else float("inf")
        return abs(lin - ex) / abs(ex)


def compare(params: ModelParams, shock: PolicyShock, v_row: float = 0.0) -> OracleComparison:
    exact, after = _effects(calibrate(params, v_row), shock)
    return OracleComparison(model.evaluate(params, shock), exact, after.iterations)
