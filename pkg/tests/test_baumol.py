import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from moneydemand.baumol import (
    BaumolParams,
    cbdc_substitution,
    elasticities,
    optimal_cash,
    sweep,
    total_cost,
)

positive = st.floats(1e-3, 1e6)
params = st.builds(BaumolParams, positive, positive, st.floats(1e-4, 1.0))


def test_total_cost_examples():
    assert total_cost(BaumolParams(2, 1, 1), 2) == 2.0
    assert total_cost(BaumolParams(100, 2, 0.04), 100) == pytest.approx(4.0, abs=1e-15)
    with pytest.raises(ValueError):
        total_cost(BaumolParams(2, 1, 1), 0.0)


def test_optimum_examples():
    s = optimal_cash(BaumolParams(2, 1, 1))
    assert (s.k_star, s.m_star) == (2.0, 1.0)
    s = optimal_cash(BaumolParams(100, 2, 0.04))
    assert s.k_star == pytest.approx(100.0, rel=1e-15)
    assert s.m_star == pytest.approx(50.0, rel=1e-15)


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, -1, 1), (1, 1, 0), (math.inf, 1, 1), (1, math.nan, 1)])
def test_invalid_params(bad):
    with pytest.raises(ValueError):
        BaumolParams(*bad)


def test_substitution_example():
    sub = cbdc_substitution(BaumolParams(100, 2, 0.04), 0.5)
    assert sub.m_cash == pytest.approx(50.0, rel=1e-15)
    assert sub.m_cbdc == pytest.approx(25.0, rel=1e-15)
    assert sub.delta == pytest.approx(-25.0, rel=1e-14)
    with pytest.raises(ValueError):
        cbdc_substitution(BaumolParams(100, 2, 0.04), 0.0)


@given(params)
def test_identity_case(p):
    assert cbdc_substitution(p, p.conversion_cost).delta == 0.0


@given(params, st.floats(1e-3, 1e6))
def test_sign_of_delta(p, b1):
    d = cbdc_substitution(p, b1).delta
    assert np.sign(d) == np.sign(b1 - p.conversion_cost) or b1 == p.conversion_cost


@given(params)
def test_optimality_and_foc(p):
    s = optimal_cash(p)
    assert s.m_star == s.k_star / 2
    assert total_cost(p, s.k_star) <= total_cost(p, 0.5 * s.k_star)
    assert total_cost(p, s.k_star) <= total_cost(p, 2.0 * s.k_star)
    holding = s.k_star / 2 * p.interest_rate
    trading = p.income / s.k_star * p.conversion_cost
    assert holding == pytest.approx(trading, rel=1e-10)
    h = 1e-6 * s.k_star
    slope = (total_cost(p, s.k_star + h) - total_cost(p, s.k_star - h)) / (2 * h)
    assert abs(slope) <= 1e-5 * p.interest_rate


def test_numeric_minimizer_oracle():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = BaumolParams(*np.exp(rng.uniform([0, -3, -5], [12, 3, 0])))
        k = optimal_cash(p).k_star
        res = minimize_scalar(
            lambda logk: total_cost(p, math.exp(logk)) / total_cost(p, k),
            bracket=(math.log(k) - 2, math.log(k) + 2),
            method="golden",
            tol=1e-12,
        )
        assert math.exp(res.x) == pytest.approx(k, rel=1e-6)


def test_elasticities():
    e = elasticities(BaumolParams(100, 2, 0.04))
    assert (e.wrt_income, e.wrt_cost, e.wrt_rate) == (0.5, 0.5, -0.5)
    assert e.numeric_income == pytest.approx(0.5, abs=1e-4)
    assert e.numeric_cost == pytest.approx(0.5, abs=1e-4)
    assert e.numeric_rate == pytest.approx(-0.5, abs=1e-4)


@given(params)
def test_square_root_scaling(p):
    scaled = BaumolParams(4 * p.income, p.conversion_cost, p.interest_rate)
    assert optimal_cash(scaled).m_star == pytest.approx(2 * optimal_cash(p).m_star, rel=1e-12)


@given(params, st.floats(1.01, 10))
def test_monotonicity(p, f):
    m = optimal_cash(p).m_star
    Y, b, r = p.income, p.conversion_cost, p.interest_rate
    assert optimal_cash(BaumolParams(Y * f, b, r)).m_star > m
    assert optimal_cash(BaumolParams(Y, b * f, r)).m_star > m
    assert optimal_cash(BaumolParams(Y, b, r * f)).m_star < m


def test_sweep():
    rows = sweep(BaumolParams(100, 2, 0.04), 0.5, "b1", 0.5, 2.0, 4)
    assert [r["b1"] for r in rows] == [0.5, 1.0, 1.5, 2.0]
    assert rows[0]["delta"] == pytest.approx(-25.0)
    assert rows[-1]["delta"] == 0.0
    assert all(r["m_cash"] == rows[0]["m_cash"] for r in rows)
    r_rows = sweep(BaumolParams(100, 2, 0.04), 0.5, "r", 0.01, 0.1, 5)
    assert all(a["m_cash"] > b["m_cash"] for a, b in zip(r_rows, r_rows[1:]))
    with pytest.raises(ValueError):
        sweep(BaumolParams(100, 2, 0.04), 0.5, "x", 0, 1, 3)
    with pytest.raises(ValueError):
        sweep(BaumolParams(100, 2, 0.04), 0.5, "b1", 0.1, 1, 1)
