"""Corner sweeps over the sensitivity bounds and the proportional-cost runs."""

from __future__ import annotations

from dataclasses import dataclass

from . import model
from .model import CostModel, Horizon, PolicyResponse, PolicyShock
from .scenarios import TOGGLES, baseline, sensitivity_grid

COLUMNS = ("d_oil_price", "d_fuel_price_eu", "d_fiscal_eu", "d_profit_ru")


@dataclass(frozen=True)
class SweepRow:
    settings: tuple[str, ...]
    response: PolicyResponse

    def label(self) -> dict[str, str]:
        return dict(zip(TOGGLES, self.settings))


@dataclass(frozen=True)
class ColumnSummary:
    minimum: float
    base: float
    maximum: float
    argmin: int  # index into SweepSummary.rows
    argmax: int


@dataclass(frozen=True)
class SweepSummary:
    """Per-column extrema over the 32 corners plus the base case.

    Extrema are taken independently per column on the signed values, so the
    minimum row of the summary is generally not one consistent scenario.
    A fiscal *cost* is the negated ``d_fiscal_eu``; its smallest value is the
    signed maximum.
    """

    horizon: Horizon
    shock: PolicyShock
    cost_model: CostModel
    base: PolicyResponse
    rows: tuple[SweepRow, ...]
    columns: dict[str, ColumnSummary]


def _summarize(base: PolicyResponse, rows: list[SweepRow]) -> dict[str, ColumnSummary]:
    out = {}
    for col in COLUMNS:
        values = [getattr(r.response, col) for r in rows]
        b = getattr(base, col)
        lo = min(range(len(values)), key=values.__getitem__)
        hi = max(range(len(values)), key=values.__getitem__)
        out[col] = ColumnSummary(
            minimum=min(values[lo], b), base=b, maximum=max(values[hi], b),
            argmin=lo, argmax=hi)
    return out


def sweep(h: Horizon | str, shock: PolicyShock,
          cost_model: CostModel | str = CostModel.ADDITIVE) -> SweepSummary:
    h = Horizon.parse(h)
    cost_model = CostModel.parse(cost_model)
    base = model.evaluate(baseline(h, cost_model), shock)
    rows = [SweepRow(g.settings, model.evaluate(g.params, shock))
            for g in sensitivity_grid(h, cost_model)]
    return SweepSummary(h, shock, cost_model, base, tuple(rows), _summarize(base, rows))


def tax_cut_sweep(h: Horizon | str, cut_cents: float = 20.0,
                  cost_model: CostModel | str = CostModel.ADDITIVE) -> SweepSummary:
    params = baseline(h, cost_model)
    return sweep(h, PolicyShock.consumer_cut(cut_cents, params.v_eu), cost_model)


def proportional_run(h: Horizon | str, cut_cents: float = 20.0,
                     transfer: float | None = None) -> tuple[PolicyResponse, PolicyResponse]:
    """Tax cut and matching cash transfer with proportional other costs.

    Without an explicit ``transfer`` the payout equals the fiscal cost of the
    tax cut under the same (proportional) cost model.
    """
    params = baseline(h, CostModel.PROPORTIONAL)
    tax = model.evaluate_tax_cut(params, cut_cents)
    if transfer is None:
        transfer = -tax.d_fiscal_eu
    return tax, model.evaluate_transfer(params, transfer)
