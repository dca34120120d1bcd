"""Post-estimation diagnostics and recursive-residual stability tests.

Breusch-Godfrey and RESET work from an :class:`~moneydemand.linreg.OlsFit`,
which carries its own design matrix. CUSUM and CUSUMSQ take recursive
residuals and return band-annotated paths ready for plotting.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import probdist
from .linreg import DesignMatrix, OlsFit, RankDeficientError, ols_fit


@dataclass(frozen=True)
class DiagnosticResult:
    name: str
    stat: float
    p_value: float
    dof: tuple[int, ...]
    distribution: str

    @property
    def reject(self) -> bool:
        return self.p_value < 0.05


def breusch_godfrey(fit: OlsFit, lags: int = 4) -> DiagnosticResult:
    """LM test for serial correlation up to order ``lags``.

    Residuals are regressed on the original regressors and their own lags
    (pre-sample lags set to zero, so the auxiliary sample keeps all n rows).
    The statistic n * R^2 is referred to chi-square(lags).
    """
    if lags < 1:
        raise ValueError("Breusch-Godfrey needs lags >= 1")
    n = fit.n
    if n <= fit.k + lags:
        raise ValueError(f"sample of {n} is too short for {fit.k} regressors plus {lags} lagged residuals")
    e = fit.residuals
    lagged = np.zeros((n, lags))
    for i in range(1, lags + 1):
        lagged[i:, i - 1] = e[:-i]
    aux_X = fit.design.with_columns([f"resid(-{i})" for i in range(1, lags + 1)], lagged)
    try:
        aux = ols_fit(aux_X, e)
    except RankDeficientError as exc:
        raise ValueError(f"degenerate Breusch-Godfrey auxiliary regression: {exc}") from exc
    # centred R^2 of the auxiliary regression
    tss = float(np.sum((e - e.mean()) ** 2))
    r2 = 1.0 - aux.rss / tss if tss > 0 else 0.0
    stat = n * r2
    return DiagnosticResult("Breusch-Godfrey LM", stat, probdist.chi2_sf(max(stat, 0.0), lags), (lags,), "chi2")


def ramsey_reset(fit: OlsFit, powers: Sequence[int] = (2,)) -> DiagnosticResult:
    """RESET F-test adding powers of the fitted values to the regression."""
    powers = tuple(powers)
    if not powers:
        raise ValueError("RESET needs at least one power of the fitted values")
    if any(p < 2 for p in powers):
        raise ValueError("RESET powers must be >= 2")
    yhat = fit.fitted
    if np.ptp(yhat) == 0:
        raise ValueError("RESET is undefined for constant fitted values")
    # rescale before powering to keep the augmented design well conditioned
    scale = np.max(np.abs(yhat))
    extra = np.column_stack([(yhat / scale) ** p for p in powers])
    aug = ols_fit(fit.design.with_columns([f"fitted^{p}" for p in powers], extra), fit.y)
    q = len(powers)
    d2 = aug.df_resid
    stat = ((fit.rss - aug.rss) / q) / (aug.rss / d2)
    return DiagnosticResult("Ramsey RESET", stat, probdist.f_sf(max(stat, 0.0), q, d2), (q, d2), "F")


def recursive_residuals(X, y) -> np.ndarray:
    """Standardised one-step-ahead prediction errors, length n - k.

    The first k rows initialise the estimate; later rows update the inverse
    cross-product matrix by Sherman-Morrison.
    """
    A = X.values if isinstance(X, DesignMatrix) else np.asarray(X, dtype=float)
    if A.ndim == 1:
        A = A[:, None]
    yv = np.asarray(y, dtype=float).ravel()
    n, k = A.shape
    if n <= k:
        raise ValueError(f"need more observations ({n}) than regressors ({k})")
    A0 = A[:k]
    if np.linalg.matrix_rank(A0) < k:
        raise ValueError("first k rows of the design are rank deficient; cannot initialise recursion")
    inv = np.linalg.inv(A0.T @ A0)
    beta = np.linalg.solve(A0, yv[:k])
    w = np.empty(n - k)
    for t in range(k, n):
        x = A[t]
        err = yv[t] - x @ beta
        v = inv @ x
        f = 1.0 + x @ v
        w[t - k] = err / np.sqrt(f)
        inv = inv - np.outer(v, v) / f
        beta = beta + inv @ x * err
    return w


@dataclass(frozen=True, eq=False)
class StabilityPath:
    name: str
    t: tuple  # period label (or observation number) of each point
    path: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    level: float

    @property
    def stable(self) -> bool:
        return bool(np.all((self.path >= self.lower) & (self.path <= self.upper)))

    def rows(self) -> list[tuple]:
        return list(zip(self.t, self.path.tolist(), self.lower.tolist(), self.upper.tolist()))


CUSUM_A = {0.10: 0.850, 0.05: 0.948, 0.01: 1.143}


def _time_index(m: int, k: int, periods) -> tuple:
    if periods is None:
        return tuple(range(k + 1, k + m + 1))
    if len(periods) != m:
        raise ValueError("one period label per recursive residual required")
    return tuple(periods)


def cusum(w, k: int, level: float = 0.05, periods=None) -> StabilityPath:
    """Cumulative sum of recursive residuals scaled by their standard deviation.

    Bands: +/-(a sqrt(T-k) + 2a (t-k)/sqrt(T-k)), with a = 0.948 at 5%.
    """
    w = np.asarray(w, dtype=float).ravel()
    m = w.size
    if m < 2:
        raise ValueError("CUSUM needs at least two recursive residuals")
    if level not in CUSUM_A:
        raise ValueError(f"CUSUM bands are tabulated at {sorted(CUSUM_A)}")
    a = CUSUM_A[level]
    sd = w.std(ddof=1)
    path = np.cumsum(w) / sd if sd > 0 else np.zeros(m)
    r = np.arange(1, m + 1)
    upper = a * np.sqrt(m) + 2.0 * a * r / np.sqrt(m)
    return StabilityPath("CUSUM", _time_index(m, k, periods), path, -upper, upper, level)


# c0 for the CUSUMSQ bands, indexed by n = (T - k) / 2, at 10%, 5% and 1%.
# Upper quantiles of max_r |s_r - r/(T-k)| under iid normal recursive
# residuals, from 200,000 draws per row (scripts/cusumsq_table.py).
_CUSUMSQ_C0 = (
    (1, 0.4938, 0.4984, 0.4999),
    (2, 0.5217, 0.6027, 0.6987),
    (3, 0.4874, 0.5512, 0.6571),
    (4, 0.4531, 0.5089, 0.6129),
    (5, 0.4230, 0.4744, 0.5748),
    (6, 0.3959, 0.4442, 0.5357),
    (7, 0.3743, 0.4207, 0.5097),
    (8, 0.3570, 0.4004, 0.4857),
    (9, 0.3410, 0.3828, 0.4627),
    (10, 0.3278, 0.3671, 0.4429),
    (11, 0.3150, 0.3528, 0.4274),
    (12, 0.3034, 0.3402, 0.4126),
    (13, 0.2938, 0.3294, 0.3983),
    (14, 0.2852, 0.3206, 0.3877),
    (15, 0.2775, 0.3108, 0.3758),
    (16, 0.2701, 0.3021, 0.3653),
    (17, 0.2624, 0.2938, 0.3570),
    (18, 0.2562, 0.2866, 0.3476),
    (19, 0.2507, 0.2809, 0.3395),
    (20, 0.2452, 0.2744, 0.3317),
    (21, 0.2395, 0.2679, 0.3244),
    (22, 0.2350, 0.2632, 0.3179),
    (23, 0.2301, 0.2571, 0.3108),
    (24, 0.2264, 0.2530, 0.3053),
    (25, 0.2222, 0.2486, 0.3000),
    (26, 0.2176, 0.2434, 0.2950),
    (27, 0.2145, 0.2396, 0.2898),
    (28, 0.2105, 0.2353, 0.2851),
    (29, 0.2076, 0.2322, 0.2801),
    (30, 0.2045, 0.2282, 0.2767),
    (31, 0.2016, 0.2251, 0.2722),
    (32, 0.1986, 0.2217, 0.2682),
    (33, 0.1956, 0.2188, 0.2645),
    (34, 0.1933, 0.2155, 0.2599),
    (35, 0.1907, 0.2133, 0.2579),
    (36, 0.1883, 0.2101, 0.2530),
    (37, 0.1859, 0.2075, 0.2500),
    (38, 0.1841, 0.2051, 0.2483),
    (39, 0.1817, 0.2027, 0.2445),
    (40, 0.1793, 0.2003, 0.2419),
    (41, 0.1776, 0.1987, 0.2398),
    (42, 0.1754, 0.1959, 0.2360),
    (43, 0.1734, 0.1938, 0.2348),
    (44, 0.1717, 0.1917, 0.2322),
    (45, 0.1702, 0.1898, 0.2296),
    (46, 0.1682, 0.1876, 0.2263),
    (47, 0.1668, 0.1861, 0.2251),
    (48, 0.1649, 0.1841, 0.2219),
    (49, 0.1633, 0.1823, 0.2204),
    (50, 0.1621, 0.1810, 0.2183),
    (55, 0.1550, 0.1729, 0.2088),
    (60, 0.1489, 0.1658, 0.2002),
    (65, 0.1432, 0.1596, 0.1925),
    (70, 0.1383, 0.1541, 0.1860),
    (75, 0.1338, 0.1495, 0.1803),
    (80, 0.1300, 0.1448, 0.1745),
    (85, 0.1263, 0.1408, 0.1696),
    (90, 0.1228, 0.1369, 0.1649),
    (95, 0.1200, 0.1336, 0.1609),
    (100, 0.1169, 0.1302, 0.1569),
    (105, 0.1140, 0.1270, 0.1529),
    (110, 0.1118, 0.1245, 0.1498),
    (115, 0.1092, 0.1216, 0.1465),
    (120, 0.1072, 0.1194, 0.1431),
    (125, 0.1052, 0.1171, 0.1413),
    (130, 0.1031, 0.1147, 0.1379),
    (135, 0.1015, 0.1128, 0.1360),
    (140, 0.0995, 0.1106, 0.1335),
    (145, 0.0980, 0.1090, 0.1312),
    (150, 0.0961, 0.1071, 0.1293),
    (155, 0.0949, 0.1056, 0.1272),
    (160, 0.0933, 0.1039, 0.1250),
    (165, 0.0918, 0.1025, 0.1233),
    (170, 0.0908, 0.1011, 0.1215),
    (175, 0.0894, 0.0994, 0.1195),
    (180, 0.0882, 0.0981, 0.1180),
    (185, 0.0870, 0.0971, 0.1167),
    (190, 0.0859, 0.0955, 0.1152),
    (195, 0.0849, 0.0945, 0.1134),
    (200, 0.0838, 0.0932, 0.1121),
    (225, 0.0793, 0.0882, 0.1057),
    (250, 0.0753, 0.0837, 0.1005),
    (275, 0.0718, 0.0799, 0.0959),
    (300, 0.0687, 0.0763, 0.0918),
    (325, 0.0662, 0.0736, 0.0887),
    (350, 0.0640, 0.0710, 0.0854),
    (375, 0.0618, 0.0688, 0.0828),
    (400, 0.0599, 0.0666, 0.0800),
    (425, 0.0581, 0.0646, 0.0775),
    (450, 0.0566, 0.0629, 0.0754),
    (475, 0.0549, 0.0611, 0.0734),
    (500, 0.0536, 0.0596, 0.0714),
)
_C0_N = np.array([row[0] for row in _CUSUMSQ_C0])
_C0_COL = {0.10: 1, 0.05: 2, 0.01: 3}


def cusumsq_c0(m: int, level: float = 0.05) -> float:
    """Band half-width for ``m`` = T - k recursive residuals (linear in m/2; clamped outside the table)."""
    if level not in _C0_COL:
        raise ValueError(f"CUSUMSQ bands are tabulated at {sorted(_C0_COL)}")
    col = np.array([row[_C0_COL[level]] for row in _CUSUMSQ_C0])
    n = m / 2.0
    if n < _C0_N[0] or n > _C0_N[-1]:
        warnings.warn(
            f"CUSUMSQ sample size {m} outside the tabulated range; using the nearest entry",
            RuntimeWarning,
            stacklevel=3,
        )
    return float(np.interp(n, _C0_N, col))


def cusumsq(w, k: int, level: float = 0.05, periods=None) -> StabilityPath:
    w = np.asarray(w, dtype=float).ravel()
    m = w.size
    sq = w**2
    total = float(sq.sum())
    if total <= 0:
        raise ValueError("CUSUMSQ is undefined when every recursive residual is zero")
    path = np.minimum(np.cumsum(sq) / total, 1.0)  # rounding can overshoot before the last point
    path[-1] = 1.0
    line = np.arange(1, m + 1) / m
    c0 = cusumsq_c0(m, level)
    return StabilityPath("CUSUMSQ", _time_index(m, k, periods), path, line - c0, line + c0, level)
