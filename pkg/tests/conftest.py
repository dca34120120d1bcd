from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from moneydemand.series import Frequency, Period, TimeSeries

DATA = Path(__file__).resolve().parents[1] / "src" / "moneydemand" / "data" / "synthetic"
GOLDEN = Path(__file__).resolve().parent / "golden"


def quarterly(values, name="X", start=Period(2010, 1)) -> TimeSeries:
    return TimeSeries(name, Frequency.QUARTERLY, start, values)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
