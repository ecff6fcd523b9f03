"""OLS of Brent on Urals, in levels and first differences, split at a date.

Standard errors are the classical homoskedastic ones; p-values are two-sided
from a Student t with n - 2 degrees of freedom, evaluated through the
regularized incomplete beta function.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import (DegenerateRegressor, InsufficientWindow, LengthMismatch,
                     ParameterError)

INVASION_DATE = dt.date(2022, 2, 24)


def _betacf(a: float, b: float, x: float, eps: float = 1e-15, max_iter: int = 500) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_sided_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if math.isinf(t):
        return 0.0
    if math.isnan(t):
        return float("nan")
    return betainc(df / 2.0, 0.5, df / (df + t * t))


def stars(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.1:
        return "*"
    return ""


@dataclass(frozen=True)
class OlsFit:
    slope: float
    intercept: float
    se_slope: float
    se_intercept: float
    t_slope: float
    t_intercept: float
    p_slope: float
    p_intercept: float
    n: int
    sse: float

    @property
    def stars_slope(self) -> str:
        return stars(self.p_slope)

    @property
    def stars_intercept(self) -> str:
        return stars(self.p_intercept)

    def to_dict(self) -> dict:
        return {
            "slope": self.slope, "intercept": self.intercept,
            "se_slope": self.se_slope, "se_intercept": self.se_intercept,
            "t_slope": self.t_slope, "t_intercept": self.t_intercept,
            "p_slope": self.p_slope, "p_intercept": self.p_intercept,
            "stars_slope": self.stars_slope, "stars_intercept": self.stars_intercept,
            "n": self.n, "sse": self.sse,
        }


def _t_stat(coef: float, se: float) -> float:
    if se == 0:
        return 0.0 if coef == 0 else math.copysign(math.inf, coef)
    return coef / se


def fit_ols(xs: Sequence[float], ys: Sequence[float]) -> OlsFit:
    """Regress ``ys`` on ``xs`` with an intercept."""
    n = len(xs)
    if n != len(ys):
        raise LengthMismatch(f"xs has {n} values, ys has {len(ys)}")
    if n < 3:
        raise InsufficientWindow(f"need at least 3 observations, got {n}")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise DegenerateRegressor("regressor has zero variance")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    sse = math.fsum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys))
    s2 = sse / (n - 2)
    se_slope = math.sqrt(s2 / sxx)
    se_intercept = math.sqrt(s2 * (1.0 / n + mx * mx / sxx))
    t_slope = _t_stat(slope, se_slope)
    t_intercept = _t_stat(intercept, se_intercept)
    df = n - 2
    return OlsFit(
        slope=slope, intercept=intercept,
        se_slope=se_slope, se_intercept=se_intercept,
        t_slope=t_slope, t_intercept=t_intercept,
        p_slope=t_two_sided_p(t_slope, df), p_intercept=t_two_sided_p(t_intercept, df),
        n=n, sse=sse,
    )


def first_differences(series: Sequence[float]) -> list[float]:
    if len(series) < 2:
        raise InsufficientWindow("first differences need at least 2 observations")
    return [b - a for a, b in zip(series[:-1], series[1:])]


@dataclass(frozen=True)
class PriceSeries:
    dates: tuple[dt.date, ...]
    brent: tuple[float, ...]
    urals: tuple[float, ...]

    def __post_init__(self):
        if not len(self.dates) == len(self.brent) == len(self.urals):
            raise LengthMismatch("dates, brent and urals must have equal length")
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur <= prev:
                raise ParameterError("date", f"dates must strictly increase ({prev} -> {cur})")
        for name in ("brent", "urals"):
            if any(not math.isfinite(v) for v in getattr(self, name)):
                raise ParameterError(name, "missing or non-finite price")

    def __len__(self):
        return len(self.dates)


def read_prices_csv(path: str | Path) -> PriceSeries:
    """Read a ``date,brent,urals`` CSV with ISO-8601 dates."""
    dates, brent, urals = [], [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in (reader.fieldnames or [])]
        if header != ["date", "brent", "urals"]:
            raise ParameterError("csv", f"expected header date,brent,urals, got {header}")
        for lineno, row in enumerate(reader, start=2):
            try:
                dates.append(dt.date.fromisoformat(row["date"].strip()))
                brent.append(float(row["brent"]))
                urals.append(float(row["urals"]))
            except (TypeError, ValueError, AttributeError) as exc:
                raise ParameterError("csv", f"line {lineno}: {exc}") from None
    return PriceSeries(tuple(dates), tuple(brent), tuple(urals))


def write_prices_csv(series: PriceSeries, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "brent", "urals"])
        for d, b, u in zip(series.dates, series.brent, series.urals):
            w.writerow([d.isoformat(), repr(b), repr(u)])


@dataclass(frozen=True)
class UralsBrentResult:
    levels_pre: OlsFit
    fd_pre: OlsFit
    levels_post: OlsFit
    fd_post: OlsFit
    split: dt.date
    fd_split: dt.date

    def columns(self) -> list[tuple[str, OlsFit]]:
        return [("(1) Brent price", self.levels_pre), ("(2) Brent FD", self.fd_pre),
                ("(3) Brent price", self.levels_post), ("(4) Brent FD", self.fd_post)]


def urals_brent_analysis(data: PriceSeries, split: dt.date = INVASION_DATE,
                         fd_split: dt.date | None = None) -> UralsBrentResult:
    """Brent regressed on Urals before and after ``split``.

    Levels: observations dated before ``split`` form the pre window.  First
    differences are computed over the whole series and dated by their later
    observation, then split at ``fd_split`` (default: ``split``); so the
    first post-window difference spans the boundary.
    """
    fd_split = split if fd_split is None else fd_split
    pre = [i for i, d in enumerate(data.dates) if d < split]
    post = [i for i, d in enumerate(data.dates) if d >= split]
    for name, idx in (("pre", pre), ("post", post)):
        if len(idx) < 3:
            raise InsufficientWindow(f"{name} levels window has {len(idx)} observations, need 3")

    d_brent = first_differences(data.brent)
    d_urals = first_differences(data.urals)
    fd_dates = data.dates[1:]
    fd_pre = [i for i, d in enumerate(fd_dates) if d < fd_split]
    fd_post = [i for i, d in enumerate(fd_dates) if d >= fd_split]
    for name, idx in (("pre", fd_pre), ("post", fd_post)):
        if len(idx) < 3:
            raise InsufficientWindow(
                f"{name} first-difference window has {len(idx)} observations, need 3")

    def fit(idx, xs, ys):
        return fit_ols([xs[i] for i in idx], [ys[i] for i in idx])

    return UralsBrentResult(
        levels_pre=fit(pre, data.urals, data.brent),
        fd_pre=fit(fd_pre, d_urals, d_brent),
        levels_post=fit(post, data.urals, data.brent),
        fd_post=fit(fd_post, d_urals, d_brent),
        split=split, fd_split=fd_split,
    )
