import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA, quarterly
from moneydemand.csvio import frequency_of, read_series, write_series
from moneydemand.indicators import brokerage_conversion_cost, build_mdi
from moneydemand.series import Frequency, Period, TimeSeries


class TestIndicators:
    def test_mdi(self):
        mdi = build_mdi(quarterly([1.0, 2.0]), quarterly([2.0, 2.0]), quarterly([3.0, 4.0]), quarterly([12.0, 4.0]))
        assert mdi.values.tolist() == [0.5, 2.0]
        assert mdi.name == "MDI"

    def test_mdi_zero_gdp(self):
        with pytest.raises(ValueError, match="GDP"):
            build_mdi(*(quarterly([1.0]) for _ in range(3)), quarterly([0.0]))

    def test_misaligned(self):
        with pytest.raises(ValueError, match="aligned"):
            build_mdi(quarterly([1.0]), quarterly([1.0]), quarterly([1.0], start=Period(2011, 1)), quarterly([1.0]))

    def test_conversion_cost(self):
        a = brokerage_conversion_cost(quarterly([3.0, 1.0]), quarterly([1000.0, 500.0]))
        assert a.values == pytest.approx([0.004, 0.003], abs=1e-15)
        b = brokerage_conversion_cost(quarterly([3.0]), quarterly([1000.0]), stamp_duty_rate=0.0)
        assert b.values[0] == 0.003

    def test_zero_volume(self):
        with pytest.raises(ValueError, match="volume"):
            brokerage_conversion_cost(quarterly([1.0]), quarterly([0.0]))

    @given(st.lists(st.floats(1e-3, 1e6), min_size=1, max_size=20), st.floats(1e-3, 1e3))
    def test_mdi_scale_free(self, flows, c):
        s = quarterly(flows)
        g = quarterly([sum(flows)] * len(flows))
        a = build_mdi(s, s, s, g).values
        b = build_mdi(quarterly(np.multiply(flows, c)), quarterly(np.multiply(flows, c)),
                      quarterly(np.multiply(flows, c)), quarterly(np.multiply(g.values, c))).values
        assert np.allclose(a, b, rtol=1e-12)


class TestCsv:
    def test_round_trip(self, tmp_path):
        s = TimeSeries("X", Frequency.MONTHLY, Period(2019, 11), [1.5, math.nan, 1 / 3])
        write_series(s, tmp_path / "x.csv")
        assert (tmp_path / "x.csv").read_text().splitlines()[2] == "2019-12,NA"
        back = read_series(tmp_path / "x.csv")
        assert back.name == "x" and back.frequency is Frequency.MONTHLY and back.start == Period(2019, 11)
        assert np.array_equal(back.values, s.values, equal_nan=True)

    @given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=30))
    def test_exact_floats(self, values):
        import tempfile
        from pathlib import Path

        with tempfile.TemporaryDirectory() as d:
            p = Path(d) / "s.csv"
            write_series(TimeSeries("S", Frequency.QUARTERLY, Period(2000, 3), values), p)
            assert read_series(p).values.tolist() == [float(v) for v in values]

    def test_bundled_frequencies(self):
        assert read_series(DATA / "m0.csv").frequency is Frequency.MONTHLY
        assert read_series(DATA / "commission.csv").frequency is Frequency.SEMIANNUAL
        online = read_series(DATA / "online.csv")
        assert len(online) == 52 and np.isnan(online.values).sum() == 1

    @pytest.mark.parametrize(
        "body, message",
        [
            ("date,value\n2010Q1,1\n", "header"),
            ("period,value\n", "no observations"),
            ("period,value\n2010Q1,1\n2010Q3,2\n", "contiguous"),
            ("period,value\n2010Q1,1\n2010-05,2\n", "mixed"),
            ("period,value\n2010Q1,abc\n", "parse"),
            ("period,value\n2010Q5,1\n", "unrecognised"),
            ("period,value\n2010Q1\n", "two fields"),
        ],
    )
    def test_malformed(self, tmp_path, body, message):
        p = tmp_path / "bad.csv"
        p.write_text(body)
        with pytest.raises(ValueError, match=message):
            read_series(p)

    def test_blank_lines_and_missing_tokens(self, tmp_path):
        p = tmp_path / "ok.csv"
        p.write_text("period,value\n2010,1\n\n2011,\n2012,nan\n")
        s = read_series(p, name="Y")
        assert s.name == "Y" and s.frequency is Frequency.ANNUAL
        assert np.isnan(s.values[1:]).all()

    def test_frequency_names(self):
        assert frequency_of("quarterly") is Frequency.QUARTERLY
        with pytest.raises(ValueError, match="unknown frequency"):
            frequency_of("weekly")
