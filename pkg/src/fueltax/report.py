"""Result tables, display rounding and the parameter-file format.

Numbers stay at full precision inside :class:`ResultTable`; rounding to
significant figures happens only in :func:`render_text`.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import model, scenarios, sensitivity
from .equilibrium import OracleComparison
from .errors import ParameterError
from .model import CostModel, Horizon, ModelParams, PolicyResponse
from .regression import UralsBrentResult

HORIZON_LABELS = {
    Horizon.VERY_SHORT_RUN: "Very short run",
    Horizon.SHORT_RUN: "Short run",
    Horizon.LONG_RUN: "Long run",
}

RESPONSE_COLUMNS = [
    ("oil_price_cents", "Oil price change cents/liter"),
    ("fuel_price_cents", "EU fuel price change cents/liter"),
    ("fiscal_cost", "Fiscal cost EU MEUR/day"),
    ("profit_per_day", "Profit gain Russia MEUR/day"),
    ("profit_per_year", "Profit gain Russia MEUR/year"),
]


def round_sig(x: float, sig: int = 2) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return round(x, sig - 1 - math.floor(math.log10(abs(x))))


def format_sig(x: float | None, sig: int = 2) -> str:
    if x is None:
        return "–"
    if x == 0:
        return "0"
    if not math.isfinite(x):
        return str(x)
    r = round_sig(x, sig)
    decimals = max(0, sig - 1 - math.floor(math.log10(abs(r))))
    return f"{r:.{decimals}f}"


def response_values(resp: PolicyResponse) -> dict[str, float | None]:
    """Display-oriented view: cents, fiscal cost as a positive magnitude."""
    return {
        "oil_price_cents": 100 * resp.d_oil_price,
        "fuel_price_cents": 100 * resp.d_fuel_price_eu,
        "fiscal_cost": -resp.d_fiscal_eu,
        "profit_per_day": resp.d_profit_ru,
        "profit_per_year": resp.d_profit_ru_yearly,
    }


@dataclass
class ResultTable:
    key: str
    title: str
    columns: list[tuple[str, str]]
    rows: list[tuple[str, dict]] = field(default_factory=list)
    flags: dict[tuple[str, str], str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, label: str, values: dict) -> None:
        self.rows.append((label, values))

    def value(self, label: str, column: str):
        for lab, vals in self.rows:
            if lab == label:
                return vals[column]
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "id": self.key,
            "title": self.title,
            "columns": [{"key": k, "header": h} for k, h in self.columns],
            "rows": [
                {"label": lab, "values": {k: vals.get(k) for k, _ in self.columns},
                 "flags": {c: note for (l, c), note in self.flags.items() if l == lab}}
                for lab, vals in self.rows
            ],
            "notes": list(self.notes),
        }


def _cell(v, sig: int) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return format_sig(v, sig)


def render_text(tables: list[ResultTable], sig: int = 2) -> str:
    out = []
    for t in tables:
        header = [""] + [h for _, h in t.columns]
        body = []
        for label, vals in t.rows:
            cells = [label]
            for key, _ in t.columns:
                txt = _cell(vals.get(key), sig)
                if (label, key) in t.flags:
                    txt += " †"
                cells.append(txt)
            body.append(cells)
        widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
        lines = [t.title, "  ".join(h.ljust(w) for h, w in zip(header, widths))]
        lines.append("  ".join("-" * w for w in widths))
        for r in body:
            lines.append("  ".join([r[0].ljust(widths[0])]
                                   + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]))
        for (label, key), note in t.flags.items():
            lines.append(f"† {label} / {dict(t.columns)[key]}: {note}")
        lines.extend(t.notes)
        out.append("\n".join(lines))
    return "\n\n".join(out) + "\n"


def render_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row"] + [k for k, _ in table.columns])
    for label, vals in table.rows:
        w.writerow([label] + ["" if vals.get(k) is None else repr(vals.get(k))
                              for k, _ in table.columns])
    return buf.getvalue()


def render_json(tables: list[ResultTable]) -> str:
    return json.dumps({"tables": [t.to_dict() for t in tables]}, indent=2,
                      ensure_ascii=False)


def write_tables(tables: list[ResultTable], fmt: str, out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "json":
        path = out_dir / "tables.json"
        path.write_text(render_json(tables))
        written.append(path)
    elif fmt == "csv":
        for t in tables:
            path = out_dir / f"{t.key}.csv"
            path.write_text(render_csv(t))
            written.append(path)
    else:
        path = out_dir / "tables.txt"
        path.write_text(render_text(tables))
        written.append(path)
    return written


# -- table builders -------------------------------------------------------

def response_table(key: str, title: str, responses: dict[str, PolicyResponse]) -> ResultTable:
    t = ResultTable(key, title, list(RESPONSE_COLUMNS))
    for label, resp in responses.items():
        t.add(label, response_values(resp))
    return t


def table_tax_cut(cost_model: CostModel = CostModel.ADDITIVE, cut_cents: float = 20.0
                  ) -> dict[Horizon, PolicyResponse]:
    return {h: model.evaluate_tax_cut(scenarios.baseline(h, cost_model), cut_cents)
            for h in Horizon}


def table_transfer(cost_model: CostModel = CostModel.ADDITIVE,
                   amounts: dict[Horizon, float] | None = None) -> dict[Horizon, PolicyResponse]:
    """Transfers tied to the published (display-rounded) fiscal costs by default."""
    amounts = scenarios.PUBLISHED_TRANSFERS[cost_model] if amounts is None else amounts
    return {h: model.evaluate_transfer(scenarios.baseline(h, cost_model), amounts[h])
            for h in Horizon}


def sweep_table(summaries: dict[Horizon, sensitivity.SweepSummary],
                key: str = "table7", title: str | None = None) -> ResultTable:
    """Minimum / base / maximum rows per horizon.

    The fiscal column shows costs, so its "Minimum" row holds the most
    negative revenue change and its "Maximum" row the least negative one.
    """
    cols = RESPONSE_COLUMNS[:4]
    t = ResultTable(key, title or "Results of sensitivity analysis (20 cent tax cut)", cols)
    for h, s in summaries.items():
        c = s.columns
        for which in ("minimum", "base", "maximum"):
            t.add(f"{HORIZON_LABELS[h]} {which}", {
                "oil_price_cents": 100 * getattr(c["d_oil_price"], which),
                "fuel_price_cents": 100 * getattr(c["d_fuel_price_eu"], which),
                "fiscal_cost": -getattr(c["d_fiscal_eu"], which),
                "profit_per_day": getattr(c["d_profit_ru"], which),
            })
    return t


def published_tables() -> list[ResultTable]:
    label = {h: HORIZON_LABELS[h] for h in Horizon}
    t2 = response_table("table2", "Effect of an EU fuel tax cut of 20 euro cents/liter",
                        {label[h]: r for h, r in table_tax_cut().items()})
    t3 = response_table("table3", "Effect of a fiscal equivalent cash transfer",
                        {label[h]: r for h, r in table_transfer().items()})
    t3.notes.append("Transfers: 140, 170 and 115 MEUR/day (tax-cut fiscal cost at display precision).")
    t7 = sweep_table({h: sensitivity.tax_cut_sweep(h) for h in Horizon})
    t7.flags[("Short run minimum", "oil_price_cents")] = (
        "printed as 3.8 in the source table; recomputation gives 0.38 (decimal-point erratum)")
    t7.flags[("Long run maximum", "fiscal_cost")] = (
        "printed as -97 in the source table; a cost of 97 (sign erratum)")
    t8 = response_table(
        "table8", "Effect of an EU fuel tax cut of 20 euro cents/liter with proportional costs",
        {label[h]: r for h, r in table_tax_cut(CostModel.PROPORTIONAL).items()})
    t9 = response_table(
        "table9", "Effect of a fiscal equivalent cash transfer with proportional costs",
        {label[h]: r for h, r in table_transfer(CostModel.PROPORTIONAL).items()})
    t9.notes.append("Transfers: 141, 166 and 115 MEUR/day.")
    return [t2, t3, t7, t8, t9]


def oracle_table(comparisons: dict[Horizon, OracleComparison]) -> ResultTable:
    cols = [
        ("linear_dp", "Linear dp c/l"), ("exact_dp", "Exact dp c/l"), ("gap_dp", "Gap dp"),
        ("linear_profit", "Linear profit MEUR/d"), ("exact_profit", "Exact profit MEUR/d"),
        ("gap_profit", "Gap profit"),
        ("linear_fiscal", "Linear fiscal MEUR/d"), ("exact_fiscal", "Exact fiscal MEUR/d"),
        ("gap_fiscal", "Gap fiscal"), ("iterations", "Iterations"),
    ]
    t = ResultTable("oracle", "Linearized vs exact isoelastic equilibrium", cols)
    for h, cmp in comparisons.items():
        t.add(HORIZON_LABELS[h], {
            "linear_dp": 100 * cmp.linear.d_oil_price, "exact_dp": 100 * cmp.exact.d_oil_price,
            "gap_dp": cmp.gap("d_oil_price"),
            "linear_profit": cmp.linear.d_profit_ru, "exact_profit": cmp.exact.d_profit_ru,
            "gap_profit": cmp.gap("d_profit_ru"),
            "linear_fiscal": cmp.linear.d_fiscal_eu, "exact_fiscal": cmp.exact.d_fiscal_eu,
            "gap_fiscal": cmp.gap("d_fiscal_eu"),
            "iterations": cmp.iterations,
        })
    t.notes.append("Gaps are |linear - exact| / |exact|.")
    return t


def regression_table(result: UralsBrentResult) -> ResultTable:
    cols = [(f"col{i + 1}", name) for i, (name, _) in enumerate(result.columns())]
    t = ResultTable("table10", "Brent and Urals price and price first-difference", cols)
    fits = [f for _, f in result.columns()]

    def coef(v, se, star):
        return f"{format_sig(v, 3)}{star} ({format_sig(se, 3)})"

    levels = {f"col{i + 1}": (coef(f.slope, f.se_slope, f.stars_slope) if i % 2 == 0 else "")
              for i, f in enumerate(fits)}
    fd = {f"col{i + 1}": (coef(f.slope, f.se_slope, f.stars_slope) if i % 2 == 1 else "")
          for i, f in enumerate(fits)}
    const = {f"col{i + 1}": coef(f.intercept, f.se_intercept, f.stars_intercept)
             for i, f in enumerate(fits)}
    nobs = {f"col{i + 1}": f.n for i, f in enumerate(fits)}
    t.add("Ural price", levels)
    t.add("Ural FD", fd)
    t.add("Constant", const)
    t.add("Observations", nobs)
    t.notes.append(f"(1)-(2) before {result.split.isoformat()}, (3)-(4) from it on "
                   f"(first differences split at {result.fd_split.isoformat()}).")
    t.notes.append("* p<0.1, ** p<0.05, *** p<0.001. Standard errors in parentheses.")
    return t


def regression_dict(result: UralsBrentResult) -> dict:
    return {
        "split": result.split.isoformat(),
        "fd_split": result.fd_split.isoformat(),
        "levels_pre": result.levels_pre.to_dict(), "fd_pre": result.fd_pre.to_dict(),
        "levels_post": result.levels_post.to_dict(), "fd_post": result.fd_post.to_dict(),
    }


# -- parameter files --------------------------------------------------------

def params_to_json(params: ModelParams) -> str:
    return json.dumps(params.to_dict(), indent=2) + "\n"


def load_params_file(path: str | Path, horizon: Horizon | None = None,
                     cost_model: CostModel | None = None,
                     overrides: dict | None = None) -> ModelParams:
    """Read a flat JSON parameter file.

    Keys missing from the file are filled from the baseline of its horizon.
    Explicit ``horizon``/``cost_model`` arguments win over the file, and
    ``overrides`` win over both.
    """
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParameterError("params", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParameterError("params", f"{path} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParameterError("params", "parameter file must hold a JSON object")
    return build_params(data, horizon, cost_model, overrides)


def build_params(data: dict, horizon: Horizon | None = None,
                 cost_model: CostModel | None = None,
                 overrides: dict | None = None) -> ModelParams:
    merged = dict(data)
    if horizon is not None:
        merged["horizon"] = horizon
    if cost_model is not None:
        merged["cost_model"] = cost_model
    merged.update(overrides or {})
    h = Horizon.parse(merged.get("horizon") or Horizon.SHORT_RUN)
    cm = CostModel.parse(merged.get("cost_model") or CostModel.ADDITIVE)
    full = scenarios.baseline(h, cm).to_dict()
    full.update(merged)
    full["horizon"], full["cost_model"] = h, cm
    return ModelParams.from_dict(full)
