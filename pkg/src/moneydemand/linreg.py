"""Ordinary least squares by column-pivoted QR, with the usual fit statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg

from . import probdist


class RankDeficientError(ValueError):
    def __init__(self, dependent: Sequence[str]):
        self.dependent = list(dependent)
        super().__init__(
            "design matrix is rank deficient; linearly dependent column(s): " + ", ".join(self.dependent)
        )


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    labels: tuple[str, ...]
    values: np.ndarray
    index: tuple | None = None  # period (or row label) of each row

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise ValueError("design matrix must be two-dimensional")
        if len(self.labels) != vals.shape[1]:
            raise ValueError("one label per column required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate column labels in {self.labels}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("design matrix contains missing or non-finite entries")
        if self.index is not None and len(self.index) != vals.shape[0]:
            raise ValueError("row index length does not match the design")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def column(self, label: str) -> np.ndarray:
        return self.values[:, self.labels.index(label)]

    def with_columns(self, labels: Sequence[str], cols: np.ndarray) -> "DesignMatrix":
        cols = np.asarray(cols, dtype=float).reshape(self.shape[0], -1)
        return DesignMatrix(self.labels + tuple(labels), np.column_stack([self.values, cols]), self.index)

    def drop(self, labels: Sequence[str]) -> "DesignMatrix":
        keep = [i for i, name in enumerate(self.labels) if name not in set(labels)]
        return DesignMatrix(tuple(self.labels[i] for i in keep), self.values[:, keep], self.index)

    @classmethod
    def from_array(cls, X, labels: Sequence[str] | None = None) -> "DesignMatrix":
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if labels is None:
            labels = [f"x{i}" for i in range(X.shape[1])]
        return cls(tuple(labels), X)


@dataclass(frozen=True)
class InformationCriteria:
    aic: float
    sbc: float
    loglik: float

    @property
    def perfect_fit(self) -> bool:
        return self.sbc == -math.inf


def information_criteria(rss: float, n: int, k: int) -> InformationCriteria:
    """Gaussian log-likelihood, AIC and SBC in their ``n ln(rss/n) + penalty`` form.

    A zero ``rss`` is a perfect fit: both criteria are ``-inf`` and the
    log-likelihood ``+inf``.
    """
    if n <= k:
        raise ValueError(f"need n > k (n={n}, k={k})")
    if rss < 0:
        raise ValueError("rss must be non-negative")
    if rss == 0:
        return InformationCriteria(-math.inf, -math.inf, math.inf)
    base = n * math.log(rss / n)
    loglik = -0.5 * n * (math.log(2 * math.pi) + math.log(rss / n) + 1.0)
    return InformationCriteria(aic=base + 2 * k, sbc=base + k * math.log(n), loglik=loglik)


def durbin_watson(residuals) -> float:
    e = np.asarray(residuals, dtype=float)
    if e.size < 2:
        raise ValueError("Durbin-Watson needs at least two residuals")
    denom = float(e @ e)
    if denom == 0:
        raise ValueError("Durbin-Watson is undefined for all-zero residuals")
    return float(np.sum(np.diff(e) ** 2) / denom)


@dataclass(frozen=True, eq=False)
class OlsFit:
    labels: tuple[str, ...]
    coefficients: np.ndarray
    covariance: np.ndarray
    standard_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    rss: float
    sigma2: float
    r2: float
    adj_r2: float
    dw: float
    loglik: float
    aic: float
    sbc: float
    n: int
    k: int
    has_intercept: bool
    design: DesignMatrix = field(repr=False)
    y: np.ndarray = field(repr=False)

    @property
    def df_resid(self) -> int:
        return self.n - self.k

    def coef(self, label: str) -> float:
        return float(self.coefficients[self.labels.index(label)])

    def table(self) -> list[dict]:
        return [
            {
                "term": name,
                "coefficient": float(b),
                "std_error": float(se),
                "t_stat": float(t),
                "p_value": float(p),
            }
            for name, b, se, t, p in zip(
                self.labels, self.coefficients, self.standard_errors, self.t_stats, self.p_values
            )
        ]


def _has_constant_column(X: np.ndarray) -> bool:
    return bool(np.any(np.all(X == X[0], axis=0) & (X[0] != 0)))


def ols_fit(X, y) -> OlsFit:
    """Least squares of ``y`` on the columns of ``X``.

    A column counts as linearly dependent when its pivot in the
    column-pivoted QR falls below ``max(n, k) * eps * |R[0, 0]|``;
    :class:`RankDeficientError` names those columns.
    """
    design = X if isinstance(X, DesignMatrix) else DesignMatrix.from_array(X)
    A = design.values
    yv = np.asarray(y, dtype=float).ravel()
    n, k = A.shape
    if yv.size != n:
        raise ValueError(f"y has {yv.size} rows but the design has {n}")
    if not np.all(np.isfinite(yv)):
        raise ValueError("dependent variable contains missing or non-finite values")
    if n <= k:
        raise ValueError(f"need more observations than regressors (n={n}, k={k})")

    Q, R, piv = linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = max(n, k) * np.finfo(float).eps * (diag[0] if diag.size else 0.0)
    rank = int(np.sum(diag > tol))
    if rank < k:
        raise RankDeficientError([design.labels[j] for j in piv[rank:]])

    beta_p = linalg.solve_triangular(R, Q.T @ yv)
    Rinv = linalg.solve_triangular(R, np.eye(k))
    beta = np.empty(k)
    beta[piv] = beta_p
    xtx_inv = np.empty((k, k))
    xtx_inv[np.ix_(piv, piv)] = Rinv @ Rinv.T

    fitted = A @ beta
    resid = yv - fitted
    rss = float(resid @ resid)
    dof = n - k
    sigma2 = rss / dof
    cov = sigma2 * xtx_inv
    se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, beta / se, np.nan)
    p = np.array([probdist.t_sf_two_sided(ti, dof) if np.isfinite(ti) else math.nan for ti in t])

    intercept = _has_constant_column(A)
    if intercept:
        tss = float(np.sum((yv - yv.mean()) ** 2))
        r2 = 1.0 - rss / tss if tss > 0 else math.nan
        adj = 1.0 - (1.0 - r2) * (n - 1) / dof
    else:
        tss = float(yv @ yv)
        r2 = 1.0 - rss / tss if tss > 0 else math.nan
        adj = 1.0 - (1.0 - r2) * n / dof
    dw = durbin_watson(resid) if rss > 0 else math.nan
    ic = information_criteria(rss, n, k)

    return OlsFit(
        labels=design.labels,
        coefficients=beta,
        covariance=cov,
        standard_errors=se,
        t_stats=t,
        p_values=p,
        residuals=resid,
        fitted=fitted,
        rss=rss,
        sigma2=sigma2,
        r2=r2,
        adj_r2=adj,
        dw=dw,
        loglik=ic.loglik,
        aic=ic.aic,
        sbc=ic.sbc,
        n=n,
        k=k,
        has_intercept=intercept,
        design=design,
        y=yv,
    )


def wald_f(restricted_rss: float, unrestricted: OlsFit, n_restrictions: int) -> float:
    """F statistic for ``n_restrictions`` zero restrictions, from the two residual sums."""
    if n_restrictions < 1:
        raise ValueError("need at least one restriction")
    return ((restricted_rss - unrestricted.rss) / n_restrictions) / (unrestricted.rss / unrestricted.df_resid)
