import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from moneydemand import probdist
from moneydemand.diagnostics import (
    DiagnosticResult,
    breusch_godfrey,
    cusum,
    cusumsq,
    cusumsq_c0,
    ramsey_reset,
    recursive_residuals,
)
from moneydemand.linreg import DesignMatrix, ols_fit


def regression(seed, n=200, slope=2.0, break_slope=None, break_scale=1.0, rho=0.0):
    rng = np.random.default_rng(seed)
    x = 1.0 + rng.standard_normal(n)
    e = rng.standard_normal(n)
    if rho:
        for t in range(1, n):
            e[t] += rho * e[t - 1]
    e[n // 2 :] *= break_scale
    b = np.full(n, slope)
    if break_slope is not None:
        b[n // 2 :] = break_slope
    y = 1.0 + b * x + e
    return DesignMatrix(("const", "x"), np.column_stack([np.ones(n), x])), y


def stability(seed, **kw):
    X, y = regression(seed, **kw)
    w = recursive_residuals(X, y)
    return cusum(w, 2), cusumsq(w, 2)


class TestBreuschGodfrey:
    def test_lm_p_value_four_lags(self):
        assert probdist.chi2_sf(6.6648, 4) == pytest.approx(0.1546, abs=5e-4)

    def test_detects_ar1(self):
        res = breusch_godfrey(ols_fit(*regression(1, rho=0.8)), 4)
        assert res.p_value < 0.01 and res.reject
        assert res.dof == (4,)

    def test_white_noise(self):
        res = breusch_godfrey(ols_fit(*regression(2)), 4)
        assert res.p_value > 0.05

    def test_invalid(self):
        fit = ols_fit(*regression(3, n=8))
        with pytest.raises(ValueError):
            breusch_godfrey(fit, 0)
        with pytest.raises(ValueError):
            breusch_godfrey(fit, 6)

    def test_against_statsmodels(self):
        from statsmodels.regression.linear_model import OLS
        from statsmodels.stats.diagnostic import acorr_breusch_godfrey

        X, y = regression(4, rho=0.3)
        lm, lm_p, _, _ = acorr_breusch_godfrey(OLS(y, X.values).fit(), nlags=4)
        res = breusch_godfrey(ols_fit(X, y), 4)
        assert res.stat == pytest.approx(lm, rel=1e-8)
        assert res.p_value == pytest.approx(lm_p, rel=1e-8)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000), st.floats(0.01, 100).flatmap(lambda c: st.sampled_from([c, -c])))
    def test_joint_rescaling(self, seed, c):
        X, y = regression(seed, n=60, rho=0.4)
        a = breusch_godfrey(ols_fit(X, y), 4).stat
        scaled = DesignMatrix(X.labels, X.values * c)
        b = breusch_godfrey(ols_fit(scaled, y * c), 4).stat
        assert b == pytest.approx(a, abs=1e-8, rel=1e-8)

    def test_verdict_rule(self):
        assert DiagnosticResult("x", 1.0, 0.0499, (1,), "chi2").reject
        assert not DiagnosticResult("x", 1.0, 0.05, (1,), "chi2").reject


class TestReset:
    def test_linear_null(self):
        res = ramsey_reset(ols_fit(*regression(5)))
        assert res.p_value > 0.10
        assert res.dof == (1, 200 - 3)

    def test_quadratic(self):
        rng = np.random.default_rng(6)
        x = rng.uniform(0, 3, 200)
        y = x**2 + rng.standard_normal(200)
        X = DesignMatrix(("const", "x"), np.column_stack([np.ones(200), x]))
        assert ramsey_reset(ols_fit(X, y)).p_value < 0.01

    def test_against_statsmodels(self):
        from statsmodels.regression.linear_model import OLS
        from statsmodels.stats.diagnostic import linear_reset

        rng = np.random.default_rng(7)
        x = rng.uniform(0, 3, 120)
        y = 0.3 * x**2 + x + rng.standard_normal(120)
        X = DesignMatrix(("const", "x"), np.column_stack([np.ones(120), x]))
        ref = linear_reset(OLS(y, X.values).fit(), power=[2], use_f=True)
        res = ramsey_reset(ols_fit(X, y), (2,))
        assert res.stat == pytest.approx(float(ref.fvalue), rel=1e-7)
        assert res.p_value == pytest.approx(float(ref.pvalue), rel=1e-7)

    def test_invalid(self):
        fit = ols_fit(*regression(8))
        with pytest.raises(ValueError):
            ramsey_reset(fit, ())
        with pytest.raises(ValueError):
            ramsey_reset(fit, (1,))
        X = DesignMatrix(("const",), np.ones((10, 1)))
        with pytest.raises(ValueError, match="constant"):
            ramsey_reset(ols_fit(X, np.arange(10.0)))


def brute_recursive(A, y):
    k = A.shape[1]
    out = []
    for t in range(k, len(y)):
        At, yt = A[:t], y[:t]
        beta = np.linalg.lstsq(At, yt, rcond=None)[0]
        inv = np.linalg.inv(At.T @ At)
        out.append((y[t] - A[t] @ beta) / np.sqrt(1 + A[t] @ inv @ A[t]))
    return np.array(out)


class TestRecursiveResiduals:
    def test_exact_map(self):
        rng = np.random.default_rng(9)
        A = rng.standard_normal((30, 3))
        w = recursive_residuals(A, A @ [1.0, -2.0, 0.5])
        assert w.shape == (27,)
        assert np.max(np.abs(w)) < 1e-10

    def test_base_case(self):
        A = np.array([[1.0, 0.0], [1.0, 1.0], [1.0, 3.0]])
        y = np.array([1.0, 2.0, 5.0])
        # line through the first two points predicts 4 at x = 3; f = 1 + x'(A'A)^-1 x = 1 + 13
        w = recursive_residuals(A, y)
        assert w.shape == (1,)
        assert w[0] == pytest.approx(1.0 / np.sqrt(14.0), abs=1e-14)

    def test_matches_refitting(self):
        rng = np.random.default_rng(10)
        A = np.column_stack([np.ones(40), rng.standard_normal((40, 2))])
        y = A @ [1.0, 2.0, 3.0] + rng.standard_normal(40)
        assert np.allclose(recursive_residuals(A, y), brute_recursive(A, y), atol=1e-10)

    def test_mean_zero_under_stable_dgp(self):
        X, y = regression(11)
        w = recursive_residuals(X, y)
        assert stats.ttest_1samp(w, 0.0).pvalue > 0.05

    def test_rank_deficient_start(self):
        A = np.column_stack([np.ones(10), np.r_[np.zeros(2), np.arange(8.0)]])
        with pytest.raises(ValueError, match="rank"):
            recursive_residuals(A, np.arange(10.0))
        with pytest.raises(ValueError):
            recursive_residuals(np.ones((2, 2)), np.ones(2))


class TestCusum:
    def test_zero_residuals(self):
        p = cusum(np.zeros(10), 2)
        assert np.all(p.path == 0) and p.stable

    def test_band_formula(self):
        p = cusum(np.random.default_rng(12).standard_normal(25), 3)
        assert p.upper[0] == pytest.approx(0.948 * 5 + 2 * 0.948 / 5)
        assert p.upper[-1] == pytest.approx(3 * 0.948 * 5)
        assert np.array_equal(p.lower, -p.upper)
        assert p.t[0] == 4 and len(p.t) == 25

    def test_stable_dgp(self):
        assert stability(13)[0].stable

    def test_coefficient_break(self):
        assert not stability(14, slope=1.0, break_slope=2.0)[0].stable

    @given(st.integers(0, 10_000), st.floats(1e-3, 1e3))
    def test_scale_invariance(self, seed, c):
        w = np.random.default_rng(seed).standard_normal(30)
        a, b = cusum(w, 2), cusum(w * c, 2)
        assert np.allclose(a.path, b.path, rtol=1e-10, atol=1e-10)
        assert np.array_equal(a.upper, b.upper)

    def test_null_false_alarms(self):
        alarms = sum(not stability(seed)[0].stable for seed in range(200))
        assert alarms <= 20

    def test_short_input(self):
        with pytest.raises(ValueError):
            cusum([1.0], 1)


class TestCusumsq:
    def test_stable_dgp(self):
        assert stability(15)[1].stable

    def test_variance_break(self):
        assert not stability(16, break_scale=2.0)[1].stable

    def test_all_zero(self):
        with pytest.raises(ValueError):
            cusumsq(np.zeros(5), 1)

    @given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=80).filter(lambda v: sum(x * x for x in v) > 1e-200))
    def test_path_shape(self, values):
        p = cusumsq(values, 1)
        assert p.path[-1] == 1.0
        assert np.all(np.diff(p.path) >= 0) and p.path[0] >= 0

    def test_c0_interpolation(self):
        lo, hi = cusumsq_c0(100), cusumsq_c0(102)
        assert lo > cusumsq_c0(101) > hi
        assert cusumsq_c0(101) == pytest.approx((lo + hi) / 2)
        with pytest.warns(RuntimeWarning):
            assert cusumsq_c0(5000) == cusumsq_c0(1000)

    def test_c0_against_simulation(self):
        # fresh draws, independent of the embedded table's seed
        rng = np.random.default_rng(17)
        m = 60
        w2 = rng.standard_normal((40_000, m)) ** 2
        s = np.cumsum(w2, axis=1)
        s /= s[:, -1:]
        d = np.max(np.abs(s - np.arange(1, m + 1) / m), axis=1)
        assert cusumsq_c0(m) == pytest.approx(np.quantile(d, 0.95), abs=0.005)
        assert np.mean(d > cusumsq_c0(m)) == pytest.approx(0.05, abs=0.005)

    def test_stable_flag_matches_bands(self):
        p = stability(18, break_scale=1.5)[1]
        inside = np.all((p.path >= p.lower) & (p.path <= p.upper))
        assert p.stable == inside
