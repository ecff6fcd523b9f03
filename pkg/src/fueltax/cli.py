"""Command-line interface.

Exit codes: 0 success, 2 usage or validation error, 3 computational error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from pathlib import Path

from . import equilibrium, model, regression, report, scenarios, sensitivity
from .errors import ComputationError, ParameterError
from .model import CostModel, Horizon, PolicyShock

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 2, 3


def _parse_set(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ParameterError("--set", f"expected key=value, got {item!r}")
        raw = raw.strip()
        if key in ("horizon", "cost_model"):
            out[key] = raw
        elif key == "income_eu" and raw.lower() in ("none", "null", ""):
            out[key] = None
        else:
            try:
                out[key] = float(raw)
            except ValueError:
                raise ParameterError(key, f"expected a number, got {raw!r}") from None
    return out


def _horizons(arg: str | None) -> list[Horizon]:
    if arg in (None, "all"):
        return list(Horizon)
    return [Horizon.parse(arg)]


def _params_for(args, horizon: Horizon | None) -> model.ModelParams:
    cost_model = CostModel.parse(args.cost_model) if args.cost_model else None
    overrides = _parse_set(getattr(args, "set", None))
    if getattr(args, "params", None):
        return report.load_params_file(args.params, horizon, cost_model, overrides)
    return report.build_params({}, horizon or Horizon.SHORT_RUN, cost_model, overrides)


def _shock(args, params: model.ModelParams) -> PolicyShock:
    if args.policy == "tax-cut":
        if args.cut_cents < 0:
            raise ParameterError("--cut-cents", "must be nonnegative")
        return PolicyShock.consumer_cut(args.cut_cents, params.v_eu)
    amount = args.transfer
    if amount is None:
        amount = model.fiscal_equivalent_transfer(params, args.cut_cents)
    if amount < 0:
        raise ParameterError("--transfer", "must be nonnegative")
    return PolicyShock.income(amount)


def _emit(args, tables: list[report.ResultTable], payload: dict | None = None) -> None:
    if args.out:
        for path in report.write_tables(tables, args.format, Path(args.out)):
            print(path)
        return
    if args.format == "json":
        print(json.dumps(payload, indent=2) if payload is not None
              else report.render_json(tables))
    elif args.format == "csv":
        for i, t in enumerate(tables):
            if len(tables) > 1:
                print(("\n" if i else "") + f"# {t.key}")
            sys.stdout.write(report.render_csv(t))
    else:
        sys.stdout.write(report.render_text(tables))


def cmd_run(args) -> int:
    horizon = Horizon.parse(args.horizon) if args.horizon else None
    params = _params_for(args, horizon)
    shock = _shock(args, params)
    resp = model.evaluate(params, shock)
    title = ("Tax cut of %g cents/liter" % args.cut_cents if args.policy == "tax-cut"
             else "Cash transfer of %.6g MEUR/day" % shock.delta_income)
    label = report.HORIZON_LABELS[params.horizon] if params.horizon else "custom"
    table = report.response_table("run", f"{title} ({params.cost_model.value} costs)",
                                  {label: resp})
    payload = {
        "horizon": params.horizon.value if params.horizon else None,
        "cost_model": params.cost_model.value,
        "policy": args.policy,
        "cut_cents": args.cut_cents if args.policy == "tax-cut" else None,
        "delta_tau": shock.delta_tau,
        "transfer": shock.delta_income,
        "response": resp.to_dict(),
        "display": report.response_values(resp),
    }
    _emit(args, [table], payload)
    return EXIT_OK


def cmd_tables(args) -> int:
    tables = report.published_tables()
    _emit(args, tables)
    return EXIT_OK


def _sweep_rows_table(h: Horizon, summary: sensitivity.SweepSummary) -> report.ResultTable:
    cols = [(t, t) for t in scenarios.TOGGLES] + [
        ("eps_d_eu_value", "eps_d_eu"), ("eps_d_row_value", "eps_d_row"),
        ("eps_s_ru_value", "eps_s_ru"), ("eps_s_row_value", "eps_s_row"),
        ("s_ru_mld", "s_ru Ml/d")] + report.RESPONSE_COLUMNS[:4]
    t = report.ResultTable(f"sweep_{h.short}", f"Sensitivity grid, {report.HORIZON_LABELS[h]}",
                           cols)
    grid = scenarios.sensitivity_grid(h, summary.cost_model)
    for i, (row, g) in enumerate(zip(summary.rows, grid)):
        vals = dict(row.label())
        vals.update({"eps_d_eu_value": g.params.eps_d_eu, "eps_d_row_value": g.params.eps_d_row,
                     "eps_s_ru_value": g.params.eps_s_ru, "eps_s_row_value": g.params.eps_s_row,
                     "s_ru_mld": g.params.s_ru})
        vals.update(report.response_values(row.response))
        t.add(str(i), vals)
    return t


def cmd_sweep(args) -> int:
    cost_model = CostModel.parse(args.cost_model or "additive")
    summaries = {}
    for h in _horizons(args.horizon):
        params = scenarios.baseline(h, cost_model)
        summaries[h] = sensitivity.sweep(h, _shock(args, params), cost_model)
    title = (f"Sensitivity analysis, {args.policy}, {cost_model.value} costs")
    tables = [report.sweep_table(summaries, key="sweep_summary", title=title)]
    if args.format == "csv" or args.out:
        tables += [_sweep_rows_table(h, s) for h, s in summaries.items()]
    _emit(args, tables)
    return EXIT_OK


def cmd_oracle(args) -> int:
    comparisons = {}
    for h in _horizons(args.horizon):
        params = _params_for(args, h)
        comparisons[h] = equilibrium.compare(params, _shock(args, params), v_row=args.v_row)
    _emit(args, [report.oracle_table(comparisons)])
    return EXIT_OK


def cmd_regress(args) -> int:
    data = regression.read_prices_csv(args.csv)
    result = regression.urals_brent_analysis(data, args.split, args.fd_split)
    _emit(args, [report.regression_table(result)], report.regression_dict(result))
    return EXIT_OK


def cmd_context(args) -> int:
    ctx = scenarios.context_report(args.profit)
    if args.format == "json":
        print(json.dumps(ctx, indent=2))
        return EXIT_OK
    t = report.ResultTable("context", f"One day of {args.profit:g} MEUR extra profit", [
        ("value", "Value")])
    t.add("Share of Russian GDP (%)", {"value": 100 * ctx["gdp_share"]})
    t.add("Share of military spending (%)", {"value": 100 * ctx["military_share"]})
    t.add("Contract soldiers (yearly salary)", {"value": ctx["soldiers"]})
    t.add("Policemen (yearly salary)", {"value": ctx["police"]})
    t.add("Disinformation workers (yearly salary)", {"value": ctx["trolls"]})
    t.add("Rocket artillery vehicles", {"value": ctx["mlrs"]})
    t.add("Tank upgrades", {"value": ctx["tank_upgrades"]})
    _emit(args, [t])
    return EXIT_OK


def cmd_export_params(args) -> int:
    params = scenarios.baseline(args.horizon or "sr", args.cost_model or "additive")
    text = report.params_to_json(params)
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fueltax",
        description="Oil-market incidence of EU fuel-tax cuts and cash transfers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, horizon_all=False, out=True):
        choices = ["vsr", "sr", "lr"] + (["all"] if horizon_all else [])
        p.add_argument("--horizon", choices=choices, default=None)
        p.add_argument("--cost-model", choices=["additive", "proportional"], default=None)
        p.add_argument("--format", choices=["table", "json", "csv"], default="table")
        if out:
            p.add_argument("--out", metavar="DIR", default=None)

    def policy(p):
        p.add_argument("--policy", choices=["tax-cut", "transfer"], default="tax-cut")
        p.add_argument("--cut-cents", type=float, default=20.0,
                       help="consumer-price cut incl. VAT, euro cents per liter")
        p.add_argument("--transfer", type=float, default=None, metavar="MEUR_PER_DAY",
                       help="transfer amount; default is the fiscal cost of the tax cut")

    def overrides(p):
        p.add_argument("--params", metavar="FILE", default=None)
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one model parameter (repeatable)")

    p = sub.add_parser("run", help="evaluate one policy at one horizon")
    common(p)
    policy(p)
    overrides(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("tables", help="reproduce the published result tables")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("sweep", help="32-corner sensitivity sweep")
    common(p, horizon_all=True)
    policy(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="compare the linear model with the exact equilibrium")
    common(p, horizon_all=True)
    policy(p)
    overrides(p)
    p.add_argument("--v-row", type=float, default=0.0,
                   help="rest-of-world VAT rate used by the exact market")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("regress", help="Brent on Urals OLS, pre/post split")
    p.add_argument("--csv", required=True, metavar="FILE")
    p.add_argument("--split", type=_date, default=regression.INVASION_DATE)
    p.add_argument("--fd-split", type=_date, default=None)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("context", help="put a daily profit figure in perspective")
    p.add_argument("--profit", type=float, required=True, metavar="MEUR_PER_DAY")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_context)

    p = sub.add_parser("export-params", help="write a baseline as a parameter file")
    p.add_argument("--horizon", choices=["vsr", "sr", "lr"], default=None)
    p.add_argument("--cost-model", choices=["additive", "proportional"], default=None)
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_export_params)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
