"""Reading and writing ``period,value`` CSV files."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .series import Frequency, TimeSeries, parse_period

MISSING = {"", "NA", "na", "NaN", "nan"}


def read_series(path, name: str | None = None) -> TimeSeries:
    """Load a contiguous series; gaps must be explicit rows with an empty or ``NA`` value."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["period", "value"]:
            raise ValueError(f"{path}: expected header 'period,value'")
        periods, values = [], []
        freq = None
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected two fields")
            period, f = parse_period(row[0])
            if freq is None:
                freq = f
            elif f is not freq:
                raise ValueError(f"{path}:{lineno}: mixed period formats")
            text = row[1].strip()
            try:
                values.append(math.nan if text in MISSING else float(text))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: cannot parse value {text!r}") from None
            periods.append(period)
    if not periods:
        raise ValueError(f"{path}: no observations")
    base = periods[0].ordinal(freq)
    for i, p in enumerate(periods):
        if p.ordinal(freq) != base + i:
            raise ValueError(f"{path}: periods are not contiguous at {p.label(freq)}")
    return TimeSeries(name or path.stem, freq, periods[0], values)


def write_series(s: TimeSeries, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["period", "value"])
        for label, v in zip(s.labels, s.values):
            w.writerow([label, "NA" if math.isnan(v) else repr(float(v))])


def frequency_of(text: str) -> Frequency:
    try:
        return Frequency(text)
    except ValueError:
        raise ValueError(f"unknown frequency {text!r}; expected one of {[f.value for f in Frequency]}") from None
