"""Derived indicators: the digital-payment proxy (MDI) and the conversion cost (A)."""

from __future__ import annotations

import numpy as np

from .series import TimeSeries, align


def _aligned(series: list[TimeSeries], what: str):
    for s in series[1:]:
        if s.frequency is not series[0].frequency or s.start != series[0].start or len(s) != len(series[0]):
            raise ValueError(f"{what}: inputs are not aligned ({series[0]!r} vs {s!r})")
    return align(series)


def build_mdi(
    online_payment: TimeSeries, card_transfer: TimeSeries, card_consumption: TimeSeries, gdp: TimeSeries
) -> TimeSeries:
    """(online payments + card transfers + card consumption) / GDP."""
    _, m = _aligned([online_payment, card_transfer, card_consumption, gdp], "build_mdi")
    if np.any(~(m[:, 3] > 0)):
        raise ValueError("build_mdi: GDP must be strictly positive in every period")
    mdi = (m[:, 0] + m[:, 1] + m[:, 2]) / m[:, 3]
    return TimeSeries("MDI", gdp.frequency, gdp.start, mdi)


def brokerage_conversion_cost(
    commission: TimeSeries, stock_volume: TimeSeries, stamp_duty_rate: float = 0.001
) -> TimeSeries:
    """Brokerage commission rate (commission / turnover) plus the stamp-duty rate."""
    _, m = _aligned([commission, stock_volume], "brokerage_conversion_cost")
    if np.any(~(m[:, 1] > 0)):
        raise ValueError("brokerage_conversion_cost: stock trading volume must be strictly positive")
    return TimeSeries("A", commission.frequency, commission.start, m[:, 0] / m[:, 1] + stamp_duty_rate)
