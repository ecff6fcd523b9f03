import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fueltax import model
from fueltax.errors import DegenerateElasticities, MissingIncome, ParameterError
from fueltax.model import CostModel, Horizon, PolicyShock
from fueltax.scenarios import baseline

from .oracles import derivatives

CUT = -0.2 / 1.2


@pytest.fixture(params=list(Horizon), ids=lambda h: h.short)
def horizon(request):
    return request.param


@pytest.fixture(params=list(CostModel), ids=lambda c: c.value)
def cost_model(request):
    return request.param


def test_dp_dtau_matches_symbolic_oracle(horizon, cost_model):
    params = baseline(horizon, cost_model)
    expected = derivatives(params)[0]
    assert model.price_response_to_tax(params) == pytest.approx(expected, rel=1e-12)


def test_dp_di_matches_symbolic_oracle(horizon, cost_model):
    params = baseline(horizon, cost_model)
    expected = derivatives(params)[1]
    assert model.price_response_to_income(params) == pytest.approx(expected, rel=1e-12)


def test_fiscal_burden_matches_revenue_derivative(horizon, cost_model):
    params = baseline(horizon, cost_model)
    dp_dtau = model.price_response_to_tax(params)
    expected = derivatives(params)[2] * CUT
    assert model.fiscal_burden(params, dp_dtau, CUT) == pytest.approx(expected, rel=1e-12)


def test_profit_matches_profit_derivative(horizon):
    params = baseline(horizon)
    assert model.profit_change_from_price(params, 0.01) == pytest.approx(
        derivatives(params)[3] * 0.01, rel=1e-12)


def test_sr_pass_through_value():
    assert model.price_response_to_tax(baseline("sr")) == pytest.approx(-0.0717, abs=5e-5)


def test_no_eu_demand_response_means_no_price_effect():
    params = baseline("sr").with_overrides(eps_d_eu=0.0)
    assert model.price_response_to_tax(params) == 0.0


def test_full_pass_through_corner():
    params = baseline("sr").with_overrides(x=1.0, c=0.0, tau=0.0, eps_s_ru=0.0, eps_s_row=0.0)
    assert model.price_response_to_tax(params) == -1.0


def test_degenerate_elasticities():
    params = baseline("sr").with_overrides(eps_d_eu=0.0, eps_d_row=0.0)
    with pytest.raises(DegenerateElasticities):
        model.price_response_to_tax(params)
    with pytest.raises(DegenerateElasticities):
        model.evaluate_transfer(params, 10.0)


def test_fuel_price_change_examples():
    sr, vsr = baseline("sr"), baseline("vsr")
    assert model.fuel_price_change(sr, 0.011942, -0.16667) == pytest.approx(-0.1857, abs=1e-4)
    assert model.fuel_price_change(sr, 0.0, 0.0) == 0.0
    assert model.fuel_price_change(vsr, 0.0886, -0.16667) == pytest.approx(-0.0937, abs=1e-4)


def test_fiscal_burden_examples():
    sr, lr = baseline("sr"), baseline("lr")
    sr_cost = model.fiscal_burden(sr, model.price_response_to_tax(sr), CUT)
    assert sr_cost == pytest.approx(-167.45, abs=0.01)
    assert model.fiscal_burden(sr, -0.07, 0.0) == 0.0
    lr_cost = model.fiscal_burden(lr, model.price_response_to_tax(lr), CUT)
    assert lr.d_eu == pytest.approx(969.0)
    assert round(lr_cost) == -115


def test_profit_examples():
    assert model.profit_change_from_price(baseline("sr"), 0.011942) == pytest.approx(11.166, abs=1e-3)
    assert model.profit_change_from_price(baseline("sr"), 0.0) == 0.0
    assert model.profit_change_from_price(baseline("lr"), 0.0078583) == pytest.approx(11.84, abs=0.01)


def test_import_ban_removes_profit_effect():
    params = baseline("vsr").with_overrides(s_ru=0.0)
    resp = model.evaluate_tax_cut(params, 20)
    assert resp.d_profit_ru == 0.0
    assert resp.d_oil_price > 0


def test_income_response_examples():
    assert model.price_response_to_income(baseline("sr")) == pytest.approx(1.133e-5, rel=1e-3)
    assert model.price_response_to_income(baseline("sr").with_overrides(eps_i_eu=0.0)) == 0.0
    vsr = model.evaluate_transfer(baseline("vsr"), 140)
    assert round(100 * vsr.d_oil_price, 1) == 1.2


def test_missing_income():
    params = baseline("sr").with_overrides(income_eu=None)
    with pytest.raises(MissingIncome):
        model.price_response_to_income(params)
    with pytest.raises(MissingIncome):
        model.evaluate_transfer(params, 100)


def test_evaluate_tax_cut_short_run():
    r = model.evaluate_tax_cut(baseline("sr"), 20)
    assert 100 * r.d_oil_price == pytest.approx(1.194, abs=1e-3)
    assert 100 * r.d_fuel_price_eu == pytest.approx(-18.57, abs=1e-2)
    assert r.d_fiscal_eu == pytest.approx(-167.45, abs=1e-2)
    assert r.d_profit_ru == pytest.approx(11.17, abs=1e-2)
    assert r.d_profit_ru_yearly == pytest.approx(365 * r.d_profit_ru)


def test_evaluate_tax_cut_proportional_short_run():
    r = model.evaluate_tax_cut(baseline("sr", "proportional"), 20)
    assert round(100 * r.d_oil_price, 2) == 0.65
    assert round(100 * r.d_fuel_price_eu) == -19
    assert r.d_fiscal_eu == pytest.approx(-167.46, abs=1e-2)  # published 166
    assert round(r.d_profit_ru, 1) == 6.1
    assert round(r.d_profit_ru_yearly, -2) == 2200


def test_zero_policies_give_zero_response(horizon, cost_model):
    params = baseline(horizon, cost_model)
    for resp in (model.evaluate_tax_cut(params, 0), model.evaluate_transfer(params, 0)):
        assert resp.d_oil_price == 0
        assert resp.d_fuel_price_eu == 0
        assert resp.d_fiscal_eu == 0
        assert resp.d_profit_ru == 0


def test_transfer_examples():
    sr = model.evaluate_transfer(baseline("sr"), 170)
    assert round(100 * sr.d_oil_price, 2) == 0.19
    assert round(100 * sr.d_fuel_price_eu, 2) == 0.23
    assert round(sr.d_profit_ru, 1) == 1.8
    assert sr.d_fiscal_eu == -170
    lr = model.evaluate_transfer(baseline("lr"), 115)
    assert round(100 * lr.d_oil_price, 3) == 0.024
    assert round(100 * lr.d_fuel_price_eu, 3) == 0.029
    assert round(lr.d_profit_ru, 2) == 0.36
    assert abs(lr.d_profit_ru_yearly - 132) <= 1.5


def test_very_short_run_has_no_yearly_figure():
    r = model.evaluate_tax_cut(baseline("vsr"), 20)
    assert r.d_profit_ru_yearly is None
    custom = baseline("vsr").with_overrides(horizon=None)
    assert model.evaluate_tax_cut(custom, 20).d_profit_ru_yearly is not None


def test_negative_inputs_rejected():
    with pytest.raises(ParameterError):
        model.evaluate_tax_cut(baseline("sr"), -1)
    with pytest.raises(ParameterError):
        model.evaluate_transfer(baseline("sr"), -1)


@pytest.mark.parametrize("field, value", [
    ("p", 0.0), ("tau", -0.1), ("v_eu", -0.2), ("x", 0.0), ("x", 1.5), ("y", -0.1),
    ("eps_d_eu", 0.1), ("eps_d_row", 0.2), ("eps_s_ru", -0.1), ("eps_s_row", -0.1),
    ("eps_i_eu", -1.0), ("income_eu", 0.0), ("c", -2.0), ("s_ru", -1.0),
])
def test_invalid_params(field, value):
    with pytest.raises(ParameterError) as err:
        baseline("sr").with_overrides(**{field: value})
    assert err.value.field == field


def test_proportional_consumer_price_validation():
    with pytest.raises(ParameterError) as err:
        baseline("sr", "proportional").with_overrides(z=-1.5)
    assert err.value.field == "z"


def test_no_rest_of_world_vat_field():
    assert "v_row" not in {f.name for f in dataclasses.fields(model.ModelParams)}


def test_proportional_costs_roughly_halve_pass_through(horizon):
    add = model.price_response_to_tax(baseline(horizon))
    prop = model.price_response_to_tax(baseline(horizon, "proportional"))
    assert abs(prop) < abs(add)
    ratio = model.evaluate_tax_cut(baseline("sr", "proportional"), 20).d_profit_ru / \
        model.evaluate_tax_cut(baseline("sr"), 20).d_profit_ru
    assert ratio == pytest.approx(0.55, abs=0.02)


def test_transfer_profit_below_tax_cut_profit(horizon, cost_model):
    params = baseline(horizon, cost_model)
    tax = model.evaluate_tax_cut(params, 20)
    transfer = model.evaluate_transfer(params, -tax.d_fiscal_eu)
    assert 0 < transfer.d_profit_ru < tax.d_profit_ru


def test_short_run_transfer_gives_about_a_sixth():
    params = baseline("sr")
    tax = model.evaluate_tax_cut(params, 20)
    transfer = model.evaluate_transfer(params, -tax.d_fiscal_eu)
    assert transfer.d_profit_ru / tax.d_profit_ru == pytest.approx(1 / 6, abs=0.02)


def test_policy_shock_validation():
    with pytest.raises(ParameterError):
        PolicyShock("duty_change", delta_tau=-0.1, delta_income=3.0)
    with pytest.raises(ParameterError):
        PolicyShock("income_change")
    with pytest.raises(ParameterError):
        PolicyShock("ban")
    assert PolicyShock.consumer_cut(20, 0.2).delta_tau == pytest.approx(CUT)


def test_evaluate_dispatches_on_shock_kind():
    params = baseline("lr")
    assert model.evaluate(params, PolicyShock.consumer_cut(20, 0.2)) == model.evaluate_tax_cut(params, 20)
    assert model.evaluate(params, PolicyShock.income(50)) == model.evaluate_transfer(params, 50)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0, max_value=100), st.sampled_from(list(Horizon)),
       st.sampled_from(list(CostModel)))
def test_tax_cut_signs(cut, h, cm):
    r = model.evaluate_tax_cut(baseline(h, cm), cut)
    assert r.d_oil_price >= 0
    assert r.d_fuel_price_eu <= 0
    assert r.d_fiscal_eu <= 0
    assert r.d_profit_ru >= 0
