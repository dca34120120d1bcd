"""Frequency-stamped time series and the preprocessing applied before estimation.

Missing observations are stored as NaN. Every transform returns a new
``TimeSeries``; inputs are never modified.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import probdist


class Frequency(enum.Enum):
    MONTHLY = "monthly"
    QUARTERLY = "quarterly"
    SEMIANNUAL = "semiannual"
    ANNUAL = "annual"

    @property
    def periods_per_year(self) -> int:
        return _PERIODS_PER_YEAR[self]


_PERIODS_PER_YEAR = {
    Frequency.MONTHLY: 12,
    Frequency.QUARTERLY: 4,
    Frequency.SEMIANNUAL: 2,
    Frequency.ANNUAL: 1,
}


@dataclass(frozen=True, order=True)
class Period:
    """A (year, index) pair; ``index`` is 1-based within the year."""

    year: int
    index: int = 1

    def ordinal(self, freq: Frequency) -> int:
        return self.year * freq.periods_per_year + self.index - 1

    @classmethod
    def from_ordinal(cls, ordinal: int, freq: Frequency) -> "Period":
        year, rem = divmod(ordinal, freq.periods_per_year)
        return cls(year, rem + 1)

    def shift(self, n: int, freq: Frequency) -> "Period":
        return Period.from_ordinal(self.ordinal(freq) + n, freq)

    def label(self, freq: Frequency) -> str:
        if freq is Frequency.MONTHLY:
            return f"{self.year:04d}-{self.index:02d}"
        if freq is Frequency.QUARTERLY:
            return f"{self.year:04d}Q{self.index}"
        if freq is Frequency.SEMIANNUAL:
            return f"{self.year:04d}H{self.index}"
        return f"{self.year:04d}"


_PERIOD_PATTERNS = [
    (re.compile(r"^(\d{4})Q([1-4])$"), Frequency.QUARTERLY),
    (re.compile(r"^(\d{4})-(\d{2})$"), Frequency.MONTHLY),
    (re.compile(r"^(\d{4})H([12])$"), Frequency.SEMIANNUAL),
    (re.compile(r"^(\d{4})$"), Frequency.ANNUAL),
]


def parse_period(text: str) -> tuple[Period, Frequency]:
    """Parse ``YYYYQn``, ``YYYY-MM``, ``YYYYHn`` or ``YYYY``."""
    text = text.strip()
    for pattern, freq in _PERIOD_PATTERNS:
        m = pattern.match(text)
        if m is None:
            continue
        year = int(m.group(1))
        index = int(m.group(2)) if freq is not Frequency.ANNUAL else 1
        if not 1 <= index <= freq.periods_per_year:
            break
        return Period(year, index), freq
    raise ValueError(f"unrecognised period literal {text!r}")


class TimeSeries:
    """Named, contiguous, period-indexed series of floats (NaN = missing)."""

    __slots__ = ("name", "frequency", "start", "values")

    def __init__(self, name: str, frequency: Frequency, start: Period, values: Iterable[float]):
        arr = np.array(values, dtype=float).ravel()
        if arr.size < 1:
            raise ValueError(f"series {name!r} must contain at least one value")
        if not 1 <= start.index <= frequency.periods_per_year:
            raise ValueError(f"period index {start.index} out of range for {frequency.value} data")
        arr.setflags(write=False)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "frequency", frequency)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, key, value):
        raise AttributeError("TimeSeries is immutable")

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return (
            f"TimeSeries({self.name!r}, {self.frequency.value}, "
            f"{self.start.label(self.frequency)}..{self.end.label(self.frequency)}, n={len(self)})"
        )

    @property
    def end(self) -> Period:
        return self.start.shift(len(self) - 1, self.frequency)

    @property
    def periods(self) -> list[Period]:
        base = self.start.ordinal(self.frequency)
        return [Period.from_ordinal(base + i, self.frequency) for i in range(len(self))]

    @property
    def labels(self) -> list[str]:
        return [p.label(self.frequency) for p in self.periods]

    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())

    def replace(self, *, name=None, start=None, values=None) -> "TimeSeries":
        return TimeSeries(
            self.name if name is None else name,
            self.frequency,
            self.start if start is None else start,
            self.values if values is None else values,
        )

    def value_at(self, period: Period) -> float:
        i = period.ordinal(self.frequency) - self.start.ordinal(self.frequency)
        if not 0 <= i < len(self):
            raise KeyError(period)
        return float(self.values[i])


def _require_complete(s: TimeSeries, what: str) -> None:
    if s.has_missing:
        first = int(np.flatnonzero(np.isnan(s.values))[0])
        raise ValueError(
            f"{what}: series {s.name!r} has a missing value at "
            f"{s.start.shift(first, s.frequency).label(s.frequency)}"
        )


def log_transform(s: TimeSeries, prefix: str = "LN") -> TimeSeries:
    """Natural log of every value; the name gets ``prefix``."""
    _require_complete(s, "log_transform")
    bad = np.flatnonzero(s.values <= 0)
    if bad.size:
        i = int(bad[0])
        raise ValueError(
            f"log_transform: non-positive value {s.values[i]!r} in {s.name!r} at period "
            f"{i + 1} ({s.start.shift(i, s.frequency).label(s.frequency)})"
        )
    return s.replace(name=prefix + s.name, values=np.log(s.values))


def difference(s: TimeSeries, order: int = 1) -> TimeSeries:
    if order < 1:
        raise ValueError("difference order must be positive")
    if len(s) <= order:
        raise ValueError(f"series {s.name!r} of length {len(s)} is too short to difference {order} time(s)")
    _require_complete(s, "difference")
    return s.replace(
        name="D" * order + s.name,
        start=s.start.shift(order, s.frequency),
        values=np.diff(s.values, n=order),
    )


def lag(s: TimeSeries, k: int) -> TimeSeries:
    """Shift forward by ``k`` periods: the result at period t holds ``s`` at t-k."""
    if k < 1:
        raise ValueError("lag must be positive")
    if len(s) <= k:
        raise ValueError(f"series {s.name!r} of length {len(s)} is too short for lag {k}")
    return s.replace(
        name=f"{s.name}(-{k})",
        start=s.start.shift(k, s.frequency),
        values=s.values[:-k],
    )


def cumulate(s: TimeSeries, anchor: float, anchor_period: Period | None = None) -> TimeSeries:
    """Inverse of :func:`difference` (order 1): prepend ``anchor`` and accumulate."""
    _require_complete(s, "cumulate")
    start = s.start.shift(-1, s.frequency) if anchor_period is None else anchor_period
    values = anchor + np.concatenate([[0.0], np.cumsum(s.values)])
    return s.replace(start=start, values=values)


def fill_missing(s: TimeSeries, method: str = "linear") -> TimeSeries:
    """Linear interpolation across interior gaps. No extrapolation."""
    if method != "linear":
        raise ValueError(f"unsupported fill method {method!r}")
    v = s.values
    ok = ~np.isnan(v)
    if ok.sum() < 2:
        raise ValueError(f"fill_missing: series {s.name!r} needs at least two observed values")
    if not ok[0] or not ok[-1]:
        raise ValueError(f"fill_missing: series {s.name!r} has leading or trailing missing values")
    x = np.arange(v.size)
    return s.replace(values=np.interp(x, x[ok], v[ok]))


def aggregate_to_quarterly(s: TimeSeries, method: str = "mean") -> TimeSeries:
    """Collapse a monthly series to quarters by ``sum``, ``mean`` or ``end_of_period``."""
    if s.frequency is not Frequency.MONTHLY:
        raise ValueError(f"aggregate_to_quarterly expects monthly data, got {s.frequency.value}")
    _require_complete(s, "aggregate_to_quarterly")
    if (s.start.index - 1) % 3 != 0:
        raise ValueError(f"series {s.name!r} starts mid-quarter ({s.start.label(s.frequency)})")
    if len(s) % 3 != 0:
        raise ValueError(f"series {s.name!r} ends with an incomplete quarter")
    blocks = s.values.reshape(-1, 3)
    if method == "sum":
        out = blocks.sum(axis=1)
    elif method == "mean":
        out = blocks.mean(axis=1)
    elif method == "end_of_period":
        out = blocks[:, -1]
    else:
        raise ValueError(f"unknown aggregation method {method!r}")
    start = Period(s.start.year, (s.start.index - 1) // 3 + 1)
    return TimeSeries(s.name, Frequency.QUARTERLY, start, out)


def interpolate_to_quarterly(s: TimeSeries, method: str = "match_sum_linear") -> TimeSeries:
    """Split each half-year value into two quarters that sum to it.

    Within a half-year the quarterly path is a straight line whose slope
    is the central difference of the neighbouring half-year levels
    (one-sided at the ends, flat for a single observation). For two
    observations this reproduces the unique linear quarterly path whose
    half-year sums match the data.
    """
    if method != "match_sum_linear":
        raise ValueError(f"unsupported interpolation method {method!r}")
    if s.frequency is not Frequency.SEMIANNUAL:
        raise ValueError(f"interpolate_to_quarterly expects semiannual data, got {s.frequency.value}")
    _require_complete(s, "interpolate_to_quarterly")
    level = s.values / 2.0  # average quarterly value in each half
    n = level.size
    slope = np.zeros(n)  # per quarter; half-year centres are two quarters apart
    if n >= 2:
        slope[0] = (level[1] - level[0]) / 2.0
        slope[-1] = (level[-1] - level[-2]) / 2.0
        slope[1:-1] = (level[2:] - level[:-2]) / 4.0
    out = np.empty(2 * n)
    out[0::2] = level - slope / 2.0
    # second quarter absorbs rounding so each pair sums to the input exactly
    out[1::2] = s.values - out[0::2]
    start = Period(s.start.year, 2 * s.start.index - 1)
    return TimeSeries(s.name, Frequency.QUARTERLY, start, out)


def _centered_moving_average(v: np.ndarray, period: int) -> np.ndarray:
    """2 x m centred MA for even m, plain m-term MA for odd m; NaN at the ends."""
    n = v.size
    out = np.full(n, np.nan)
    if period % 2 == 1:
        h = period // 2
        w = np.full(period, 1.0 / period)
    else:
        h = period // 2
        w = np.full(period + 1, 1.0 / period)
        w[0] = w[-1] = 0.5 / period
    out[h : n - h] = np.convolve(v, w, mode="valid")
    return out


def seasonal_adjust(s: TimeSeries, model: str = "additive") -> TimeSeries:
    """Classical moving-average decomposition; returns the seasonally adjusted series.

    Seasonal factors are averaged over the observations where the centred
    trend exists and normalised to mean 0 (additive) or 1 (multiplicative).
    """
    period = s.frequency.periods_per_year
    if period < 2:
        raise ValueError("annual data has no seasonal component")
    if model not in ("additive", "multiplicative"):
        raise ValueError(f"unknown seasonal model {model!r}")
    _require_complete(s, "seasonal_adjust")
    v = s.values
    if v.size < 2 * period:
        raise ValueError(
            f"seasonal_adjust: {s.name!r} has {v.size} observations, needs at least {2 * period}"
        )
    if model == "multiplicative" and np.any(v <= 0):
        raise ValueError("multiplicative seasonal adjustment requires strictly positive data")

    trend = _centered_moving_average(v, period)
    detrended = v - trend if model == "additive" else v / trend
    season_of = (np.arange(v.size) + s.start.index - 1) % period
    factors = np.array([np.nanmean(detrended[season_of == j]) for j in range(period)])
    if model == "additive":
        factors -= factors.mean()
        adjusted = v - factors[season_of]
    else:
        factors /= factors.mean()
        adjusted = v / factors[season_of]
    return s.replace(values=adjusted)


@dataclass(frozen=True)
class MomentSummary:
    n: int
    mean: float
    median: float
    max: float
    min: float
    std: float
    skewness: float
    kurtosis: float


def describe(s: TimeSeries) -> MomentSummary:
    """Table-style moments; skewness and kurtosis use divisor-n central moments.

    ``std`` is the usual sample standard deviation (divisor n-1). Skewness
    and kurtosis are NaN for a constant series.
    """
    _require_complete(s, "describe")
    x = s.values
    n = x.size
    if n < 2:
        raise ValueError("describe needs at least two observations")
    mean = float(x.mean())
    dev = x - mean
    sd = math.sqrt(float(np.mean(dev**2)))
    if sd > 0:
        # standardise first so tiny spreads do not underflow m2**1.5
        z = dev / sd
        skew = float(np.mean(z**3))
        kurt = float(np.mean(z**4))
    else:
        skew = kurt = math.nan
    return MomentSummary(
        n=n,
        mean=mean,
        median=float(np.median(x)),
        max=float(x.max()),
        min=float(x.min()),
        std=float(x.std(ddof=1)),
        skewness=skew,
        kurtosis=kurt,
    )


@dataclass(frozen=True)
class JarqueBera:
    stat: float
    p_value: float


def jarque_bera(skewness: float, kurtosis: float, n: int) -> JarqueBera:
    if n < 3:
        raise ValueError("Jarque-Bera needs n >= 3")
    stat = n / 6.0 * (skewness**2 + (kurtosis - 3.0) ** 2 / 4.0)
    return JarqueBera(stat, probdist.chi2_sf(stat, 2))


def align(series: Sequence[TimeSeries]) -> tuple[list[Period], np.ndarray]:
    """Intersect the period ranges of ``series``; returns periods and an (n, m) matrix."""
    if not series:
        raise ValueError("nothing to align")
    freq = series[0].frequency
    for s in series[1:]:
        if s.frequency is not freq:
            raise ValueError(
                f"cannot align {s.name!r} ({s.frequency.value}) with {series[0].name!r} ({freq.value})"
            )
    lo = max(s.start.ordinal(freq) for s in series)
    hi = min(s.end.ordinal(freq) for s in series)
    if hi < lo:
        raise ValueError("series do not overlap")
    cols = []
    for s in series:
        off = lo - s.start.ordinal(freq)
        cols.append(s.values[off : off + hi - lo + 1])
    periods = [Period.from_ordinal(o, freq) for o in range(lo, hi + 1)]
    return periods, np.column_stack(cols)
