import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moneydemand.linreg import (
    DesignMatrix,
    RankDeficientError,
    durbin_watson,
    information_criteria,
    ols_fit,
)


def normal_equations(X, y):
    """Textbook oracle: beta = (X'X)^-1 X'y, cov = s^2 (X'X)^-1."""
    xtx_inv = np.linalg.inv(X.T @ X)
    beta = xtx_inv @ X.T @ y
    e = y - X @ beta
    s2 = e @ e / (X.shape[0] - X.shape[1])
    return beta, np.sqrt(np.diag(s2 * xtx_inv))


def random_problem(rng, n, k):
    X = np.column_stack([np.ones(n), rng.standard_normal((n, k - 1))])
    y = X @ rng.standard_normal(k) + rng.standard_normal(n)
    return X, y


class TestOls:
    def test_exact_line(self):
        fit = ols_fit(np.array([[1, 0], [1, 1], [1, 2.0]]), np.array([1, 3, 5.0]))
        assert np.allclose(fit.coefficients, [1, 2], atol=1e-12)
        assert fit.rss == pytest.approx(0, abs=1e-24)
        assert fit.r2 == pytest.approx(1.0, abs=1e-12)

    def test_intercept_only_is_mean(self):
        fit = ols_fit(np.ones((3, 1)), np.array([2, 4, 6.0]))
        assert fit.coefficients[0] == pytest.approx(4.0, abs=1e-12)
        assert fit.has_intercept

    def test_normal_equations_oracle(self):
        rng = np.random.default_rng(40)
        X, y = random_problem(rng, 40, 4)
        beta, se = normal_equations(X, y)
        fit = ols_fit(X, y)
        assert np.allclose(fit.coefficients, beta, atol=1e-8, rtol=0)
        assert np.allclose(fit.standard_errors, se, atol=1e-8, rtol=0)

    def test_statistics_consistent(self, rng):
        X, y = random_problem(rng, 60, 5)
        fit = ols_fit(X, y)
        assert np.allclose(fit.standard_errors, np.sqrt(np.diag(fit.covariance)))
        assert np.allclose(fit.t_stats, fit.coefficients / fit.standard_errors)
        assert fit.sigma2 == pytest.approx(fit.rss / (60 - 5))
        assert np.allclose(X.T @ fit.residuals, 0, atol=1e-8)
        tss = np.sum((y - y.mean()) ** 2)
        assert fit.r2 == pytest.approx(1 - fit.rss / tss, abs=1e-12)
        assert 0 <= fit.r2 <= 1 and 0 <= fit.dw <= 4
        assert fit.df_resid == 55
        assert fit.coef("x1") == fit.coefficients[1]

    def test_rank_deficient_names_column(self, rng):
        X, y = random_problem(rng, 30, 3)
        X = np.column_stack([X, X[:, 1] + 2 * X[:, 2]])
        with pytest.raises(RankDeficientError) as info:
            ols_fit(DesignMatrix(("const", "a", "b", "c"), X), y)
        assert len(info.value.dependent) == 1

    def test_fitted_as_regressor(self, rng):
        X, y = random_problem(rng, 50, 3)
        fit = ols_fit(X, y)
        with pytest.raises(RankDeficientError):
            ols_fit(np.column_stack([X, fit.fitted]), y)
        # the rank-aware SVD solution of the augmented problem has the same rss
        Z = np.column_stack([X, fit.fitted])
        b, *_ = np.linalg.lstsq(Z, y, rcond=None)
        e = y - Z @ b
        assert e @ e == pytest.approx(fit.rss, rel=1e-8)

    def test_too_few_rows(self):
        with pytest.raises(ValueError, match="more observations"):
            ols_fit(np.ones((2, 2)), np.ones(2))

    def test_design_validation(self):
        with pytest.raises(ValueError, match="duplicate"):
            DesignMatrix(("a", "a"), np.ones((3, 2)))
        with pytest.raises(ValueError, match="non-finite"):
            DesignMatrix(("a",), np.array([[1.0], [math.nan]]))

    @settings(max_examples=40)
    @given(st.integers(0, 10_000), st.floats(0.01, 100).flatmap(lambda c: st.sampled_from([c, -c])))
    def test_column_rescaling(self, seed, c):
        rng = np.random.default_rng(seed)
        X, y = random_problem(rng, 30, 4)
        a = ols_fit(X, y)
        Xs = X.copy()
        Xs[:, 2] *= c
        b = ols_fit(Xs, y)
        assert b.coefficients[2] == pytest.approx(a.coefficients[2] / c, rel=1e-9, abs=1e-12)
        assert np.allclose(a.fitted, b.fitted, atol=1e-10)
        assert b.rss == pytest.approx(a.rss, rel=1e-10)
        assert b.r2 == pytest.approx(a.r2, abs=1e-10)
        assert b.dw == pytest.approx(a.dw, abs=1e-10)


class TestDurbinWatson:
    def test_examples(self):
        assert durbin_watson([1, 1, 1]) == 0
        assert durbin_watson([1, -1, 1, -1]) == 3.0

    def test_white_noise(self):
        e = np.random.default_rng(7).standard_normal(10_000)
        assert durbin_watson(e) == pytest.approx(2.0, abs=0.1)

    def test_zero_residuals(self):
        with pytest.raises(ValueError):
            durbin_watson([0, 0, 0])


class TestInformationCriteria:
    def test_pinned(self):
        ic = information_criteria(2.5, 50, 3)
        assert ic.sbc == pytest.approx(-138.0505446614151, abs=1e-10)
        assert ic.aic == pytest.approx(-143.78661367769953, abs=1e-10)
        assert ic.loglik == pytest.approx(3.946380178616138, abs=1e-10)

    @given(st.integers(5, 500), st.integers(1, 4))
    def test_rss_equals_n(self, n, k):
        assert information_criteria(float(n), n, k).sbc == pytest.approx(k * math.log(n), abs=1e-9)

    @given(st.floats(1e-6, 1e6), st.integers(10, 500), st.integers(1, 8))
    def test_penalty_monotone(self, rss, n, k):
        assert information_criteria(rss, n, k + 1).sbc > information_criteria(rss, n, k).sbc

    def test_perfect_fit(self):
        ic = information_criteria(0.0, 10, 2)
        assert ic.perfect_fit and ic.sbc == -math.inf

    @given(st.lists(st.floats(0.1, 100), min_size=2, max_size=10), st.floats(0.1, 10), st.floats(-50, 50))
    def test_ranking_invariant_under_affine_loglik(self, rsses, a, b):
        n, k = 40, 3
        lls = [information_criteria(r, n, k).loglik for r in rsses]
        sbcs = [information_criteria(r, n, k).sbc for r in rsses]
        transformed = [a * ll + b for ll in lls]
        assert np.array_equal(np.argsort(sbcs, kind="stable"), np.argsort([-t for t in transformed], kind="stable"))
