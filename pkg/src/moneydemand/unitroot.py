"""Augmented Dickey-Fuller tests and integration-order classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import probdist
from .linreg import DesignMatrix, ols_fit
from .series import TimeSeries, difference


class Deterministics(enum.Enum):
    NONE = "none"
    CONSTANT = "constant"
    CONSTANT_AND_TREND = "constant_and_trend"

    @property
    def code(self) -> str:
        """Table notation (C, T): e.g. ``C,T`` or ``C,0``."""
        return {"none": "0,0", "constant": "C,0", "constant_and_trend": "C,T"}[self.value]


LEVELS = (0.01, 0.05, 0.10)

# MacKinnon (2010) finite-sample response surfaces, one series (N = 1):
# crit(T) = b0 + b1/T + b2/T^2 + b3/T^3 at the 1%, 5% and 10% levels.
_CRIT_SURFACE = {
    Deterministics.NONE: (
        (-2.56574, -2.2358, -3.627, 0.0),
        (-1.94100, -0.2686, -3.365, 31.223),
        (-1.61682, 0.2656, -2.714, 25.364),
    ),
    Deterministics.CONSTANT: (
        (-3.43035, -6.5393, -16.786, -79.433),
        (-2.86154, -2.8903, -4.234, -40.040),
        (-2.56677, -1.5384, -2.809, 0.0),
    ),
    Deterministics.CONSTANT_AND_TREND: (
        (-3.95877, -9.0531, -28.428, -134.155),
        (-3.41049, -4.3904, -9.036, -45.374),
        (-3.12705, -2.5856, -3.925, -22.380),
    ),
}

# MacKinnon (1994) asymptotic p-value regressions, N = 1:
# (tau_star, tau_min, tau_max, small-p coefficients, large-p coefficients)
_PVALUE_SURFACE = {
    Deterministics.NONE: (
        -1.04, -19.04, math.inf,
        (0.6344, 1.2378, 3.2496e-2),
        (0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2),
    ),
    Deterministics.CONSTANT: (
        -1.61, -18.83, 2.74,
        (2.1659, 1.4412, 3.8269e-2),
        (1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2),
    ),
    Deterministics.CONSTANT_AND_TREND: (
        -2.89, -16.18, 0.7,
        (3.2512, 1.6047, 4.9588e-2),
        (2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2),
    ),
}

# standard normal quantiles at 1%, 5%, 10%
_Z_LEVELS = (-2.3263478740408408, -1.6448536269514722, -1.2815515655446004)


@dataclass(frozen=True)
class AdfSpec:
    """Deterministic terms and augmentation lags; ``lags=None`` selects lags automatically."""

    deterministics: Deterministics = Deterministics.CONSTANT
    lags: int | None = 0

    def __post_init__(self):
        if isinstance(self.deterministics, str):
            object.__setattr__(self, "deterministics", Deterministics(self.deterministics))
        if self.lags is not None and self.lags < 0:
            raise ValueError("lags must be non-negative")

    def code(self, lags: int | None = None) -> str:
        used = self.lags if lags is None else lags
        return f"({self.deterministics.code},{'auto' if used is None else used})"


@dataclass(frozen=True)
class AdfResult:
    spec: AdfSpec
    lags: int
    t_stat: float
    critical_values: dict[float, float]
    approx_p: float
    reject_at: dict[float, bool]
    n_used: int
    series_name: str = ""


def critical_values(det: Deterministics, n: int) -> dict[float, float]:
    out = {}
    for level, (b0, b1, b2, b3) in zip(LEVELS, _CRIT_SURFACE[det]):
        out[level] = b0 + b1 / n + b2 / n**2 + b3 / n**3
    return out


def _asymptotic_z(tau: float, det: Deterministics) -> float:
    star, _, _, small, large = _PVALUE_SURFACE[det]
    coefs = small if tau <= star else large
    return sum(c * tau**i for i, c in enumerate(coefs))


def approx_pvalue(tau: float, det: Deterministics, n: int) -> float:
    """Approximate left-tail p-value of an ADF t-ratio.

    Between the 1% and 10% finite-sample critical values the probit of p is
    interpolated linearly in tau. Outside that range the asymptotic
    MacKinnon (1994) probit curve is followed, shifted to join the tabulated
    endpoint continuously. Accuracy is roughly +/-0.02 inside the table.
    """
    _, tau_min, tau_max, _, _ = _PVALUE_SURFACE[det]
    if tau >= tau_max:
        return 1.0
    if tau <= tau_min:
        return 0.0
    crit = critical_values(det, n)
    c1, c5, c10 = crit[0.01], crit[0.05], crit[0.10]
    z1, z5, z10 = _Z_LEVELS
    if tau < c1:
        z = z1 + _asymptotic_z(tau, det) - _asymptotic_z(c1, det)
    elif tau <= c5:
        z = z1 + (tau - c1) / (c5 - c1) * (z5 - z1)
    elif tau <= c10:
        z = z5 + (tau - c5) / (c10 - c5) * (z10 - z5)
    else:
        z = z10 + _asymptotic_z(tau, det) - _asymptotic_z(c10, det)
    return probdist.normal_cdf(z)


def max_lag_rule(n: int) -> int:
    """Schwert's rule, floor(12 (n/100)^0.25)."""
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def _adf_design(y: np.ndarray, lags: int, det: Deterministics, start: int | None = None):
    """Rows t = start..n-1 of the ADF regression (``start`` defaults to lags+1)."""
    dy = np.diff(y)
    first = lags + 1 if start is None else start
    rows = np.arange(first, y.size)
    cols = [y[rows - 1]]
    labels = ["y(-1)"]
    for i in range(1, lags + 1):
        cols.append(dy[rows - 1 - i])
        labels.append(f"dy(-{i})")
    if det is not Deterministics.NONE:
        cols.append(np.ones(rows.size))
        labels.append("const")
    if det is Deterministics.CONSTANT_AND_TREND:
        cols.append(rows.astype(float))
        labels.append("trend")
    return DesignMatrix(tuple(labels), np.column_stack(cols)), dy[rows - 1]


def _select_lags(y: np.ndarray, det: Deterministics, max_lag: int, crit: float = 1.645) -> int:
    """General-to-specific: drop the longest lag while it is insignificant at 10%."""
    for lags in range(max_lag, 0, -1):
        X, dy = _adf_design(y, lags, det, start=max_lag + 1)
        fit = ols_fit(X, dy)
        if abs(fit.t_stats[X.labels.index(f"dy(-{lags})")]) >= crit:
            return lags
    return 0


def adf_test(s, spec: AdfSpec = AdfSpec(), max_lag: int | None = None) -> AdfResult:
    """Regress dy_t on y_{t-1}, lagged differences and deterministics; test the y_{t-1} t-ratio.

    ``s`` may be a :class:`TimeSeries` or a 1-d array. The effective sample
    (rows of the regression) must hold at least ``lags + 10`` observations.
    """
    name = s.name if isinstance(s, TimeSeries) else ""
    if isinstance(s, TimeSeries):
        if s.has_missing:
            raise ValueError(f"adf_test: series {name!r} has missing values")
        y = s.values
    else:
        y = np.asarray(s, dtype=float).ravel()
        if not np.all(np.isfinite(y)):
            raise ValueError("adf_test: missing or non-finite values")
    if np.ptp(y) == 0:
        raise ValueError(f"adf_test: series {name!r} is constant")

    det = spec.deterministics
    if spec.lags is None:
        cap = max_lag_rule(y.size) if max_lag is None else max_lag
        # keep at least lags + 10 rows in the selection sample
        while cap > 0 and y.size - 1 - cap < cap + 10:
            cap -= 1
        lags = _select_lags(y, det, cap)
    else:
        lags = spec.lags
    n_used = y.size - 1 - lags
    if n_used < lags + 10:
        raise ValueError(
            f"adf_test: effective sample of {n_used} is too short for {lags} lag(s) (need {lags + 10})"
        )

    X, dy = _adf_design(y, lags, det)
    fit = ols_fit(X, dy)
    tau = float(fit.t_stats[0])
    crit = critical_values(det, n_used)
    return AdfResult(
        spec=spec,
        lags=lags,
        t_stat=tau,
        critical_values=crit,
        approx_p=approx_pvalue(tau, det, n_used),
        reject_at={lvl: tau < c for lvl, c in crit.items()},
        n_used=n_used,
        series_name=name,
    )


HIGHER = 2  # integration order "more than one"


@dataclass(frozen=True)
class IntegrationOrder:
    order: int  # 0, 1 or HIGHER
    level_result: AdfResult
    diff_result: AdfResult | None

    @property
    def label(self) -> str:
        return {0: "I(0)", 1: "I(1)"}.get(self.order, "higher than I(1)")


def integration_order(
    s,
    level_spec: AdfSpec = AdfSpec(Deterministics.CONSTANT_AND_TREND, None),
    diff_spec: AdfSpec = AdfSpec(Deterministics.CONSTANT, None),
    level: float = 0.05,
    max_lag: int | None = None,
) -> IntegrationOrder:
    """I(0) if the level rejects a unit root, I(1) if the first difference does, else higher.

    ``max_lag`` caps automatic lag selection (default: Schwert's rule).
    """
    level_res = adf_test(s, level_spec, max_lag)
    if level_res.reject_at[level]:
        return IntegrationOrder(0, level_res, None)
    ds = difference(s) if isinstance(s, TimeSeries) else np.diff(np.asarray(s, dtype=float))
    diff_res = adf_test(ds, diff_spec, max_lag)
    return IntegrationOrder(1 if diff_res.reject_at[level] else HIGHER, level_res, diff_res)
