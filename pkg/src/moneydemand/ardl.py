"""ARDL estimation, SBC order search, bounds F-test, long-run solution and ECM.

Conventions
-----------
Data enter as an :class:`ArdlData` block: the dependent series first, then
``k`` regressors, aligned on their common periods. An order ``(p, q1..qk)``
means ``p`` lags of the dependent variable and lags ``0..qj`` of regressor j.

The bounds regression is the conditional error-correction form

    dy_t = [det] + pi_y y_{t-1} + sum_j pi_j x_{j,t-1}
           + sum_{i=1}^{p-1} psi_i dy_{t-i}
           + sum_j sum_{i=0}^{max(qj-1, 0)} omega_{ji} dx_{j,t-i} + e_t

which always carries the contemporaneous difference dx_{j,t}; it is a
re-parameterisation of the levels ARDL(p, max(q1, 1), ..., max(qk, 1)).
"""

from __future__ import annotations

import enum
import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import probdist
from .linreg import DesignMatrix, OlsFit, ols_fit
from .series import Frequency, Period, TimeSeries, align


class CriticalCase(enum.Enum):
    I = "I"  # no intercept, no trend
    II = "II"  # restricted intercept, no trend
    III = "III"  # unrestricted intercept, no trend
    IV = "IV"  # unrestricted intercept, restricted trend
    V = "V"  # unrestricted intercept, unrestricted trend

    @classmethod
    def parse(cls, value) -> "CriticalCase":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("-", "_").replace(" ", "_")
        aliases = {
            "1": "I", "i": "I", "none": "I",
            "2": "II", "ii": "II", "restricted_intercept": "II",
            "3": "III", "iii": "III", "unrestricted_intercept": "III",
            "4": "IV", "iv": "IV", "restricted_trend": "IV",
            "5": "V", "v": "V", "unrestricted_trend": "V",
        }
        if text not in aliases:
            raise ValueError(f"unknown bounds-test case {value!r}")
        return cls(aliases[text])


# Pesaran, Shin & Smith (2001) asymptotic bounds, Table CI (i)-(v).
# _PSS[case][k] = ((I0, I1) at 10%, (I0, I1) at 5%, (I0, I1) at 1%)
_PSS = {
    CriticalCase.I: (
        ((3.00, 3.00), (4.20, 4.20), (7.17, 7.17)),
        ((2.44, 3.28), (3.15, 4.11), (4.81, 6.02)),
        ((2.17, 3.19), (2.72, 3.83), (3.88, 5.30)),
        ((2.01, 3.10), (2.45, 3.63), (3.42, 4.84)),
        ((1.90, 3.01), (2.26, 3.48), (3.07, 4.44)),
        ((1.81, 2.93), (2.14, 3.34), (2.82, 4.21)),
        ((1.75, 2.87), (2.04, 3.24), (2.66, 4.05)),
        ((1.70, 2.83), (1.97, 3.18), (2.54, 3.91)),
        ((1.66, 2.79), (1.91, 3.11), (2.45, 3.79)),
        ((1.63, 2.75), (1.86, 3.05), (2.34, 3.68)),
        ((1.60, 2.72), (1.82, 2.99), (2.26, 3.60)),
    ),
    CriticalCase.II: (
        ((3.80, 3.80), (4.60, 4.60), (6.44, 6.44)),
        ((3.02, 3.51), (3.62, 4.16), (4.94, 5.58)),
        ((2.63, 3.35), (3.10, 3.87), (4.13, 5.00)),
        ((2.37, 3.20), (2.79, 3.67), (3.65, 4.66)),
        ((2.20, 3.09), (2.56, 3.49), (3.29, 4.37)),
        ((2.08, 3.00), (2.39, 3.38), (3.06, 4.15)),
        ((1.99, 2.94), (2.27, 3.28), (2.88, 3.99)),
        ((1.92, 2.89), (2.17, 3.21), (2.73, 3.90)),
        ((1.85, 2.85), (2.11, 3.15), (2.62, 3.77)),
        ((1.80, 2.80), (2.04, 3.08), (2.50, 3.68)),
        ((1.76, 2.77), (1.98, 3.04), (2.41, 3.61)),
    ),
    CriticalCase.III: (
        ((6.58, 6.58), (8.21, 8.21), (11.79, 11.79)),
        ((4.04, 4.78), (4.94, 5.73), (6.84, 7.84)),
        ((3.17, 4.14), (3.79, 4.85), (5.15, 6.36)),
        ((2.72, 3.77), (3.23, 4.35), (4.29, 5.61)),
        ((2.45, 3.52), (2.86, 4.01), (3.74, 5.06)),
        ((2.26, 3.35), (2.62, 3.79), (3.41, 4.68)),
        ((2.12, 3.23), (2.45, 3.61), (3.15, 4.43)),
        ((2.03, 3.13), (2.32, 3.50), (2.96, 4.26)),
        ((1.95, 3.06), (2.22, 3.39), (2.79, 4.10)),
        ((1.88, 2.99), (2.14, 3.30), (2.65, 3.97)),
        ((1.83, 2.94), (2.06, 3.24), (2.54, 3.86)),
    ),
    CriticalCase.IV: (
        ((5.37, 5.37), (6.29, 6.29), (8.26, 8.26)),
        ((4.05, 4.49), (4.68, 5.15), (6.10, 6.73)),
        ((3.38, 4.02), (3.88, 4.61), (4.99, 5.85)),
        ((2.97, 3.74), (3.38, 4.23), (4.30, 5.23)),
        ((2.68, 3.53), (3.05, 3.97), (3.81, 4.92)),
        ((2.49, 3.38), (2.81, 3.76), (3.50, 4.63)),
        ((2.33, 3.25), (2.63, 3.62), (3.27, 4.39)),
        ((2.22, 3.17), (2.50, 3.50), (3.07, 4.23)),
        ((2.13, 3.09), (2.38, 3.41), (2.94, 4.08)),
        ((2.05, 3.02), (2.30, 3.33), (2.82, 3.95)),
        ((1.98, 2.97), (2.21, 3.25), (2.68, 3.84)),
    ),
    CriticalCase.V: (
        ((9.81, 9.81), (11.64, 11.64), (15.73, 15.73)),
        ((5.59, 6.26), (6.56, 7.30), (8.74, 9.63)),
        ((4.19, 5.06), (4.87, 5.85), (6.34, 7.52)),
        ((3.47, 4.45), (4.01, 5.07), (5.17, 6.36)),
        ((3.03, 4.06), (3.47, 4.57), (4.40, 5.72)),
        ((2.75, 3.79), (3.12, 4.25), (3.93, 5.23)),
        ((2.53, 3.59), (2.87, 4.00), (3.60, 4.90)),
        ((2.38, 3.45), (2.69, 3.83), (3.34, 4.63)),
        ((2.26, 3.34), (2.55, 3.68), (3.15, 4.43)),
        ((2.16, 3.24), (2.43, 3.56), (2.97, 4.24)),
        ((2.07, 3.16), (2.32, 3.46), (2.84, 4.10)),
    ),
}

BOUNDS_LEVELS = (0.10, 0.05, 0.01)


def pesaran_critical_values(case, k: int, level: float) -> tuple[float, float]:
    """Tabulated (I(0), I(1)) bounds; no interpolation or extrapolation."""
    case = CriticalCase.parse(case)
    rows = _PSS[case]
    if not 0 <= k < len(rows):
        raise ValueError(f"no tabulated bounds for k={k} regressors (table covers 0..{len(rows) - 1})")
    try:
        col = BOUNDS_LEVELS.index(level)
    except ValueError:
        raise ValueError(f"no tabulated bounds at level {level}; available: {BOUNDS_LEVELS}") from None
    return rows[k][col]


COINTEGRATED = "cointegrated"
NOT_COINTEGRATED = "not_cointegrated"
INCONCLUSIVE = "inconclusive"


def bounds_verdict(f_stat: float, lower: float, upper: float) -> str:
    if f_stat > upper:
        return COINTEGRATED
    if f_stat < lower:
        return NOT_COINTEGRATED
    return INCONCLUSIVE


@dataclass(frozen=True)
class ArdlOrder:
    p: int
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(v) for v in self.q))
        if self.p < 1:
            raise ValueError("ARDL order needs p >= 1")
        if any(v < 0 for v in self.q):
            raise ValueError("regressor lag orders must be non-negative")

    @classmethod
    def of(cls, *orders: int) -> "ArdlOrder":
        return cls(orders[0], tuple(orders[1:]))

    @property
    def max_lag(self) -> int:
        return max((self.p,) + self.q)

    @property
    def total(self) -> int:
        return self.p + sum(self.q)

    def as_tuple(self) -> tuple[int, ...]:
        return (self.p,) + self.q

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True, eq=False)
class ArdlData:
    """Dependent series plus regressors in levels, aligned on common periods."""

    dependent: str
    regressors: tuple[str, ...]
    frequency: Frequency
    periods: tuple[Period, ...]
    values: np.ndarray  # (n, 1 + k), dependent first

    @classmethod
    def from_series(cls, dependent: TimeSeries, regressors: Sequence[TimeSeries]) -> "ArdlData":
        if not regressors:
            raise ValueError("at least one regressor is required")
        allseries = [dependent, *regressors]
        names = [s.name for s in allseries]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        periods, values = align(allseries)
        if np.isnan(values).any():
            raise ValueError("ARDL data contain missing values on the common sample")
        return cls(dependent.name, tuple(names[1:]), dependent.frequency, tuple(periods), values)

    @classmethod
    def from_arrays(cls, y, X, names: Sequence[str] | None = None, start: Period = Period(2000, 1)) -> "ArdlData":
        y = np.asarray(y, dtype=float).ravel()
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if names is None:
            names = ["y"] + [f"x{j + 1}" for j in range(X.shape[1])]
        dep = TimeSeries(names[0], Frequency.QUARTERLY, start, y)
        regs = [TimeSeries(n, Frequency.QUARTERLY, start, X[:, j]) for j, n in enumerate(names[1:])]
        return cls.from_series(dep, regs)

    @property
    def k(self) -> int:
        return len(self.regressors)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def y(self) -> np.ndarray:
        return self.values[:, 0]

    def x(self, j: int) -> np.ndarray:
        return self.values[:, 1 + j]

    def _check_order(self, order: ArdlOrder) -> None:
        if len(order.q) != self.k:
            raise ValueError(f"order {order} has {len(order.q)} regressor lags but the data have {self.k} regressors")


def _lag_label(name: str, i: int) -> str:
    return name if i == 0 else f"{name}(-{i})"


def _finish_design(labels, cols, rows, data: ArdlData, min_rows: int | None) -> DesignMatrix:
    n_rows, n_cols = rows.size, len(cols)
    # a design may be square; estimation itself needs more rows than columns
    need = n_cols if min_rows is None else max(min_rows, n_cols + 1)
    if n_rows < need:
        raise ValueError(
            f"insufficient overlap: {n_rows} usable rows for {n_cols} regressors (need at least {need})"
        )
    return DesignMatrix(tuple(labels), np.column_stack(cols), tuple(data.periods[t] for t in rows))


def build_ardl_design(
    data: ArdlData, order: ArdlOrder, start: int | None = None, min_rows: int | None = None
) -> tuple[DesignMatrix, np.ndarray]:
    """Levels regression of y_t on an intercept, y lags 1..p and x_j lags 0..q_j.

    Rows begin at ``start`` (default: the first row where every lag exists).
    """
    data._check_order(order)
    first = order.max_lag if start is None else start
    if first < order.max_lag:
        raise ValueError(f"start row {first} precedes the maximum lag {order.max_lag}")
    rows = np.arange(first, data.n)
    labels, cols = ["const"], [np.ones(rows.size)]
    for i in range(1, order.p + 1):
        labels.append(_lag_label(data.dependent, i))
        cols.append(data.y[rows - i])
    for j, name in enumerate(data.regressors):
        for i in range(order.q[j] + 1):
            labels.append(_lag_label(name, i))
            cols.append(data.x(j)[rows - i])
    return _finish_design(labels, cols, rows, data, min_rows), data.y[rows]


@dataclass(frozen=True, eq=False)
class ArdlFit:
    order: ArdlOrder
    dependent: str
    regressors: tuple[str, ...]
    fit: OlsFit
    periods: tuple[Period, ...]


def fit_ardl(data: ArdlData, order: ArdlOrder, start: int | None = None, min_rows: int | None = None) -> ArdlFit:
    X, y = build_ardl_design(data, order, start, min_rows)
    return ArdlFit(order, data.dependent, data.regressors, ols_fit(X, y), X.index)


@dataclass(frozen=True, eq=False)
class OrderSelection:
    order: ArdlOrder
    fit: ArdlFit
    criterion_table: tuple[tuple[ArdlOrder, float], ...]  # in grid order
    start: int


def _ranking_key(order: ArdlOrder, sbc: float):
    return (sbc, order.total, order.as_tuple())


def best_candidate(candidates: Sequence[tuple[ArdlOrder, float]]) -> ArdlOrder:
    """Lowest SBC; ties go to the smaller total lag length, then the lexicographically smaller order."""
    if not candidates:
        raise ValueError("no estimable candidate orders")
    return min(candidates, key=lambda c: _ranking_key(*c))[0]


def select_order_sbc(data: ArdlData, max_p: int, max_q: int, min_rows: int | None = None) -> OrderSelection:
    """Grid search over p in 1..max_p and each q_j in 0..max_q on one common sample."""
    if max_p < 1 or max_q < 0:
        raise ValueError("need max_p >= 1 and max_q >= 0")
    start = max(max_p, max_q)
    table = []
    fits = {}
    for p in range(1, max_p + 1):
        for qs in itertools.product(range(max_q + 1), repeat=data.k):
            order = ArdlOrder(p, qs)
            try:
                f = fit_ardl(data, order, start=start, min_rows=min_rows)
            except ValueError:
                continue
            table.append((order, f.fit.sbc))
            fits[order] = f
    best = best_candidate(table)
    return OrderSelection(best, fits[best], tuple(table), start)


@dataclass(frozen=True)
class LongRunSolution:
    regressors: tuple[str, ...]
    theta: np.ndarray
    standard_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    intercept: float
    intercept_se: float
    intercept_t: float
    intercept_p: float
    dof: int

    def table(self) -> list[dict]:
        rows = [
            {"term": name, "coefficient": float(b), "std_error": float(se), "t_stat": float(t), "p_value": float(p)}
            for name, b, se, t, p in zip(self.regressors, self.theta, self.standard_errors, self.t_stats, self.p_values)
        ]
        rows.append(
            {
                "term": "INPT",
                "coefficient": self.intercept,
                "std_error": self.intercept_se,
                "t_stat": self.intercept_t,
                "p_value": self.intercept_p,
            }
        )
        return rows


DENOMINATOR_GUARD = 1e-6


def long_run_coefficients(af: ArdlFit) -> LongRunSolution:
    """theta_j = sum of x_j lag coefficients / (1 - sum of y lag coefficients), delta-method SEs."""
    fit = af.fit
    labels = fit.labels
    b = fit.coefficients
    y_idx = [labels.index(_lag_label(af.dependent, i)) for i in range(1, af.order.p + 1)]
    denom = 1.0 - float(b[y_idx].sum())
    if abs(denom) <= DENOMINATOR_GUARD:
        raise ValueError(
            "no long-run relation (dependent series behaves as unit root within the model): "
            f"1 - sum of lagged-dependent coefficients = {denom:.3g}"
        )
    groups = [[labels.index("const")]]
    for j, name in enumerate(af.regressors):
        groups.append([labels.index(_lag_label(name, i)) for i in range(af.order.q[j] + 1)])

    values = np.empty(len(groups))
    J = np.zeros((len(groups), b.size))
    for r, idx in enumerate(groups):
        num = float(b[idx].sum())
        values[r] = num / denom
        J[r, idx] = 1.0 / denom
        J[r, y_idx] = num / denom**2
    cov = J @ fit.covariance @ J.T
    se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    t = np.divide(values, se, out=np.full_like(values, np.nan), where=se > 0)
    dof = fit.df_resid
    p = np.array([probdist.t_sf_two_sided(v, dof) if np.isfinite(v) else math.nan for v in t])
    return LongRunSolution(
        regressors=af.regressors,
        theta=values[1:],
        standard_errors=se[1:],
        t_stats=t[1:],
        p_values=p[1:],
        intercept=float(values[0]),
        intercept_se=float(se[0]),
        intercept_t=float(t[0]),
        intercept_p=float(p[0]),
        dof=dof,
    )


def build_ecm_series(data: ArdlData, solution: LongRunSolution, include_intercept: bool = False) -> TimeSeries:
    """ecm_t = y_t - sum_j theta_j x_{j,t} (- intercept when requested)."""
    theta = np.asarray(solution.theta, dtype=float)
    if theta.size != data.k:
        raise ValueError(f"long-run solution has {theta.size} coefficients but the data have {data.k} regressors")
    if tuple(solution.regressors) != data.regressors:
        raise ValueError(f"long-run solution is for {solution.regressors}, data hold {data.regressors}")
    ecm = data.y - data.values[:, 1:] @ theta
    if include_intercept:
        ecm = ecm - solution.intercept
    return TimeSeries("ECM", data.frequency, data.periods[0], ecm)


@dataclass(frozen=True, eq=False)
class EcmFit:
    order: ArdlOrder
    fit: OlsFit
    lam: float
    adjustment_speed: float
    ecm_series: TimeSeries
    stable: bool

    @property
    def warning(self) -> bool:
        return not self.stable

    def short_run_table(self) -> list[dict]:
        return self.fit.table()

    def speed_text(self) -> str:
        return f"{100 * self.adjustment_speed:.2f}% per period"


def _short_run_columns(data: ArdlData, order: ArdlOrder, rows: np.ndarray):
    dy = np.diff(data.y, prepend=np.nan)
    labels, cols = [], []
    for i in range(1, order.p):
        labels.append(_lag_label("D" + data.dependent, i))
        cols.append(dy[rows - i])
    for j, name in enumerate(data.regressors):
        dx = np.diff(data.x(j), prepend=np.nan)
        for i in range(max(order.q[j] - 1, 0) + 1):
            labels.append(_lag_label("D" + name, i))
            cols.append(dx[rows - i])
    return labels, cols


def fit_ecm(
    data: ArdlData, order: ArdlOrder, solution: LongRunSolution, include_intercept: bool = False
) -> EcmFit:
    """Regress dy_t on an intercept, short-run differences and ECM_{t-1}.

    Difference lags are 1..p-1 for y and 0..max(q_j - 1, 0) for each x_j,
    so a regressor with q_j = 0 still contributes dx_{j,t}. The differenced
    sample must exceed the parameter count by at least 10 rows.
    """
    data._check_order(order)
    ecm = build_ecm_series(data, solution, include_intercept)
    rows = np.arange(max(order.max_lag, 1), data.n)
    labels, cols = _short_run_columns(data, order, rows)
    labels = ["const"] + labels + ["ECM(-1)"]
    cols = [np.ones(rows.size)] + cols + [ecm.values[rows - 1]]
    X = _finish_design(labels, cols, rows, data, len(cols) + 10)
    dy = data.y[rows] - data.y[rows - 1]
    fit = ols_fit(X, dy)
    lam = fit.coef("ECM(-1)")
    stable = -1.0 < lam < 0.0
    if not stable:
        warnings.warn(f"error-correction coefficient {lam:.4f} lies outside (-1, 0)", RuntimeWarning, stacklevel=2)
    return EcmFit(order, fit, lam, -lam, ecm, stable)


def _deterministic_columns(case: CriticalCase, rows: np.ndarray):
    labels, cols = [], []
    if case is not CriticalCase.I:
        labels.append("const")
        cols.append(np.ones(rows.size))
    if case in (CriticalCase.IV, CriticalCase.V):
        labels.append("trend")
        cols.append(rows.astype(float) + 1.0)
    return labels, cols


def level_terms(data: ArdlData) -> list[str]:
    return [_lag_label(data.dependent, 1)] + [_lag_label(x, 1) for x in data.regressors]


def restricted_terms(data: ArdlData, case) -> list[str]:
    """Coefficients set to zero under the bounds-test null for ``case``."""
    case = CriticalCase.parse(case)
    extra = {CriticalCase.II: ["const"], CriticalCase.IV: ["trend"]}.get(case, [])
    return level_terms(data) + extra


def fit_uecm(data: ArdlData, order: ArdlOrder, case=CriticalCase.III) -> OlsFit:
    """The conditional error-correction (bounds) regression for ``order``."""
    case = CriticalCase.parse(case)
    data._check_order(order)
    rows = np.arange(max(order.max_lag, 1), data.n)
    labels, cols = _deterministic_columns(case, rows)
    labels.append(_lag_label(data.dependent, 1))
    cols.append(data.y[rows - 1])
    for j, name in enumerate(data.regressors):
        labels.append(_lag_label(name, 1))
        cols.append(data.x(j)[rows - 1])
    sr_labels, sr_cols = _short_run_columns(data, order, rows)
    X = _finish_design(labels + sr_labels, cols + sr_cols, rows, data, None)
    return ols_fit(X, data.y[rows] - data.y[rows - 1])


@dataclass(frozen=True)
class BoundsResult:
    f_stat: float
    k: int
    case: CriticalCase
    rows: dict[float, tuple[float, float]]
    verdict: dict[float, str]
    n_restrictions: int
    n_obs: int
    implied_lambda: float


def bounds_f_test(
    data: ArdlData,
    order: ArdlOrder,
    case=CriticalCase.III,
    integration_orders: Sequence[int] | None = None,
) -> BoundsResult:
    """Wald F on the lagged levels (plus the restricted deterministic term for cases II and IV).

    Passing ``integration_orders`` re-checks that no variable exceeds I(1).
    """
    case = CriticalCase.parse(case)
    if integration_orders is not None and any(o > 1 for o in integration_orders):
        raise ValueError("bounds test requires every variable to be I(0) or I(1)")
    unrestricted = fit_uecm(data, order, case)
    drop = restricted_terms(data, case)
    restricted_X = unrestricted.design.drop(drop)
    if restricted_X.shape[1] == 0:
        restricted_rss = float(unrestricted.y @ unrestricted.y)
    else:
        restricted_rss = ols_fit(restricted_X, unrestricted.y).rss
    m = len(drop)
    f_stat = ((restricted_rss - unrestricted.rss) / m) / (unrestricted.rss / unrestricted.df_resid)
    rows = {lvl: pesaran_critical_values(case, data.k, lvl) for lvl in BOUNDS_LEVELS}
    verdict = {lvl: bounds_verdict(f_stat, lo, hi) for lvl, (lo, hi) in rows.items()}
    return BoundsResult(
        f_stat=float(f_stat),
        k=data.k,
        case=case,
        rows=rows,
        verdict=verdict,
        n_restrictions=m,
        n_obs=unrestricted.n,
        implied_lambda=unrestricted.coef(_lag_label(data.dependent, 1)),
    )
