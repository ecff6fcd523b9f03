import datetime as dt
import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from fueltax.errors import (DegenerateRegressor, InsufficientWindow, LengthMismatch,
                            ParameterError)
from fueltax.regression import (INVASION_DATE, PriceSeries, betainc, first_differences,
                                fit_ols, read_prices_csv, stars, t_two_sided_p,
                                urals_brent_analysis, write_prices_csv)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


def test_hand_example():
    fit = fit_ols([0, 1, 2], [1, 2, 4])
    assert abs(fit.slope - 1.5) < 1e-10
    assert abs(fit.intercept - 5 / 6) < 1e-10
    assert abs(fit.se_slope - math.sqrt(1 / 12)) < 1e-10
    assert abs(fit.sse - 1 / 6) < 1e-10
    assert fit.n == 3


def test_exact_line():
    fit = fit_ols([0, 1, 2], [1, 3, 5])
    assert fit.slope == 2 and fit.intercept == 1 and fit.sse == 0
    assert fit.p_slope == 0.0 and fit.stars_slope == "***"


def test_matches_scipy_linregress():
    rng = random.Random(3)
    xs = [rng.uniform(40, 120) for _ in range(200)]
    ys = [5 + 0.9 * x + rng.gauss(0, 3) for x in xs]
    fit = fit_ols(xs, ys)
    ref = stats.linregress(xs, ys)
    assert fit.slope == pytest.approx(ref.slope, rel=1e-12)
    assert fit.intercept == pytest.approx(ref.intercept, rel=1e-10)
    assert fit.se_slope == pytest.approx(ref.stderr, rel=1e-10)
    assert fit.se_intercept == pytest.approx(ref.intercept_stderr, rel=1e-10)
    assert fit.p_slope == pytest.approx(ref.pvalue, abs=1e-12)


@given(a=finite, b=st.floats(min_value=-50, max_value=50, allow_nan=False),
       xs=st.lists(st.integers(-100, 100), min_size=3, max_size=30, unique=True))
def test_fit_recovers_any_line(a, b, xs):
    fit = fit_ols(xs, [a + b * x for x in xs])
    assert fit.slope == pytest.approx(b, abs=1e-9)
    assert fit.intercept == pytest.approx(a, abs=1e-7)
    assert fit.sse <= 1e-12 * max(1.0, sum((a + b * x) ** 2 for x in xs))


@settings(max_examples=50)
@given(seed=st.integers(0, 10_000), shift=st.floats(-100, 100), k=st.floats(0.1, 10))
def test_affine_invariance(seed, shift, k):
    rng = random.Random(seed)
    xs = [rng.uniform(0, 10) for _ in range(20)]
    ys = [1 + 2 * x + rng.gauss(0, 1) for x in xs]
    base = fit_ols(xs, ys)
    moved = fit_ols([x + shift for x in xs], ys)
    assert moved.slope == pytest.approx(base.slope, rel=1e-9)
    assert moved.se_slope == pytest.approx(base.se_slope, rel=1e-7)
    assert moved.intercept == pytest.approx(base.intercept - base.slope * shift,
                                            rel=1e-7, abs=1e-7)
    scaled = fit_ols(xs, [k * y for y in ys])
    assert scaled.slope == pytest.approx(k * base.slope, rel=1e-9)
    assert scaled.intercept == pytest.approx(k * base.intercept, rel=1e-9, abs=1e-9)
    assert scaled.se_slope == pytest.approx(k * base.se_slope, rel=1e-9)
    assert scaled.se_intercept == pytest.approx(k * base.se_intercept, rel=1e-9)
    assert scaled.t_slope == pytest.approx(base.t_slope, rel=1e-9)
    assert scaled.t_intercept == pytest.approx(base.t_intercept, rel=1e-9)


@settings(max_examples=50)
@given(seed=st.integers(0, 10_000))
def test_p_value_symmetric_in_slope_sign(seed):
    rng = random.Random(seed)
    xs = [rng.uniform(0, 10) for _ in range(15)]
    ys = [0.3 * x + rng.gauss(0, 2) for x in xs]
    up = fit_ols(xs, ys)
    down = fit_ols(xs, [-y for y in ys])
    assert down.slope == pytest.approx(-up.slope)
    assert down.p_slope == pytest.approx(up.p_slope, rel=1e-12)
    assert down.stars_slope == up.stars_slope


@pytest.mark.parametrize("df", [1, 2, 3, 5, 10, 30, 100, 922])
@pytest.mark.parametrize("t", [0.0, 0.1, 0.5, 1.0, 1.645, 2.0, 3.3, 8.0, 40.0])
def test_t_p_values_match_scipy(t, df):
    ref = 2 * stats.t.sf(t, df)
    assert abs(t_two_sided_p(t, df) - ref) < 1e-10
    assert t_two_sided_p(-t, df) == t_two_sided_p(t, df)


@pytest.mark.parametrize("a, b", [(0.5, 0.5), (1, 1), (2.5, 0.5), (10, 3), (461, 0.5)])
def test_betainc_matches_scipy(a, b):
    from scipy.special import betainc as ref
    for x in (0.0, 1e-6, 0.1, 0.37, 0.5, 0.9, 0.999, 1.0):
        assert abs(betainc(a, b, x) - ref(a, b, x)) < 1e-12


def test_betainc_domain():
    with pytest.raises(ValueError):
        betainc(1, 1, 1.5)


def test_p_value_edges():
    assert t_two_sided_p(math.inf, 5) == 0.0
    assert math.isnan(t_two_sided_p(math.nan, 5))
    assert t_two_sided_p(0.0, 5) == 1.0


@pytest.mark.parametrize("p, expected", [
    (0.0, "***"), (0.000999, "***"), (0.001, "**"), (0.0499, "**"),
    (0.05, "*"), (0.0999, "*"), (0.1, ""), (0.9, ""),
])
def test_star_thresholds(p, expected):
    assert stars(p) == expected


def test_regression_errors():
    with pytest.raises(LengthMismatch):
        fit_ols([1, 2, 3], [1, 2])
    with pytest.raises(InsufficientWindow):
        fit_ols([1, 2], [1, 2])
    with pytest.raises(DegenerateRegressor):
        fit_ols([2, 2, 2], [1, 2, 3])


def test_first_differences_examples():
    assert first_differences([1, 2, 4]) == [1, 2]
    assert first_differences([7.0] * 5) == [0.0] * 4
    assert first_differences([3 + 0.5 * i for i in range(6)]) == [0.5] * 5
    with pytest.raises(InsufficientWindow):
        first_differences([1.0])


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=40))
def test_first_differences_invert_cumsum(steps):
    series = [0] + list(itertools.accumulate(steps))
    assert first_differences(series) == steps


def _synthetic(n_pre=30, n_post=30, post=None, seed=0):
    rng = random.Random(seed)
    start = INVASION_DATE - dt.timedelta(days=n_pre)
    dates = tuple(start + dt.timedelta(days=i) for i in range(n_pre + n_post))
    urals = [rng.uniform(60, 110) for _ in dates]
    brent = [4.269 + 0.947 * u for u in urals]
    if post is not None:
        for i in range(n_pre, n_pre + n_post):
            brent[i], urals[i] = post(urals[i])
    return PriceSeries(dates, tuple(brent), tuple(urals))


def test_synthetic_pre_slope():
    res = urals_brent_analysis(_synthetic())
    assert res.levels_pre.slope == pytest.approx(0.947, abs=1e-12)
    assert res.levels_pre.intercept == pytest.approx(4.269, abs=1e-9)
    assert res.fd_pre.slope == pytest.approx(0.947, abs=1e-12)
    assert res.levels_post.slope == pytest.approx(0.947, abs=1e-12)


def test_thirty_dollar_discount_after_split():
    res = urals_brent_analysis(_synthetic(post=lambda u: (u + 30, u)))
    assert res.levels_post.slope == pytest.approx(1.0, abs=1e-12)
    assert res.levels_post.intercept == pytest.approx(30.0, abs=1e-9)
    assert res.fd_post.n == 30
    assert res.levels_pre.n == 30 and res.fd_pre.n == 29


def test_fd_split_override():
    data = _synthetic()
    res = urals_brent_analysis(data, fd_split=INVASION_DATE + dt.timedelta(days=1))
    assert res.fd_pre.n == 30 and res.fd_post.n == 29
    assert res.fd_split == INVASION_DATE + dt.timedelta(days=1)


def test_window_too_small():
    with pytest.raises(InsufficientWindow, match="pre"):
        urals_brent_analysis(_synthetic(n_pre=2))
    with pytest.raises(InsufficientWindow, match="post"):
        urals_brent_analysis(_synthetic(n_post=2))


def test_series_validation():
    d = dt.date(2022, 1, 1)
    with pytest.raises(ParameterError):
        PriceSeries((d, d), (1.0, 2.0), (1.0, 2.0))
    with pytest.raises(ParameterError):
        PriceSeries((d, d + dt.timedelta(1)), (1.0, math.nan), (1.0, 2.0))
    with pytest.raises(LengthMismatch):
        PriceSeries((d,), (1.0, 2.0), (1.0,))


def test_csv_round_trip_is_bit_exact(tmp_path):
    data = _synthetic(seed=7)
    path = tmp_path / "prices.csv"
    write_prices_csv(data, path)
    back = read_prices_csv(path)
    assert back == data
    a, b = urals_brent_analysis(data), urals_brent_analysis(back)
    assert a == b


def test_csv_reading(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("date,brent,urals\n2022-01-03,78.98,75.1\n2022-01-04,80.0,76.5\n")
    data = read_prices_csv(path)
    assert data.dates == (dt.date(2022, 1, 3), dt.date(2022, 1, 4))
    assert data.brent == (78.98, 80.0) and data.urals == (75.1, 76.5)


@pytest.mark.parametrize("text", [
    "day,brent,urals\n2022-01-03,1,2\n",
    "date,urals,brent\n2022-01-03,1,2\n",
    "date,brent,urals\n03/01/2022,1,2\n",
    "date,brent,urals\n2022-01-03,,2\n",
    "date,brent,urals\n2022-01-04,1,2\n2022-01-03,1,2\n",
])
def test_csv_rejects_bad_input(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(ParameterError):
        read_prices_csv(path)
