"""Generate the bundled synthetic study in ``src/moneydemand/data/synthetic``.

Quarterly sample 2010Q1-2022Q4 (52 observations). Raw inputs come at the
frequencies the real study had to handle:

    m0.csv           monthly currency stock, seasonal (multiplicative)
    online.csv       quarterly online payments (one missing value)
    transfer.csv     quarterly card transfers
    consumption.csv  quarterly card consumption
    gdp.csv          quarterly nominal GDP
    commission.csv   semiannual brokerage commission
    volume.csv       quarterly stock trading volume
    rate.csv         quarterly one-year deposit rate, percent
    level2.csv       a twice-cumulated series (used by study_i2.json only)

The regressors are built first and run through the package's own
preprocessing; log M0 then follows a conditional error-correction DGP

    d lnM0_t = -0.45 (lnM0_{t-1} - c - theta' x_{t-1}) + 0.2 d lnGDP_t + e_t

with x = (MDI, A, r, LNGDP), theta = (-0.04, -20, -0.01, 0.9), e ~ N(0, 0.004^2).
Seasonality and monthly detail are layered on top and removed again by the
pipeline. Everything is driven by ``SEED``.

    python scripts/make_synthetic_dataset.py
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from moneydemand.csvio import write_series
from moneydemand.pipeline import StudyConfig, prepare_variables
from moneydemand.series import Frequency, Period, TimeSeries

SEED = 20240229
N = 52
START = Period(2010, 1)
OUT = Path(__file__).resolve().parents[1] / "src" / "moneydemand" / "data" / "synthetic"

THETA = np.array([-0.04, -20.0, -0.01, 0.9])
CONST = -0.5
LAMBDA = -0.45
SEASON = np.array([1.05, 0.98, 0.98, 0.99])  # quarter factors of the currency stock

VARIABLES = [
    {"name": "ONLINE", "file": "online.csv", "frequency": "quarterly", "role": "raw-component", "transforms": ["fill"]},
    {"name": "TRANSFER", "file": "transfer.csv", "frequency": "quarterly", "role": "raw-component"},
    {"name": "CONSUMPTION", "file": "consumption.csv", "frequency": "quarterly", "role": "raw-component"},
    {"name": "GDP", "file": "gdp.csv", "frequency": "quarterly", "role": "raw-component"},
    {"name": "COMMISSION", "file": "commission.csv", "frequency": "semiannual", "role": "raw-component",
     "transforms": ["interpolate"]},
    {"name": "VOLUME", "file": "volume.csv", "frequency": "quarterly", "role": "raw-component"},
    {"name": "M0", "file": "m0.csv", "frequency": "monthly", "aggregation": "mean", "role": "dependent",
     "transforms": ["seasonal_adjust:multiplicative", "log"]},
    {"name": "MDI", "indicator": "mdi", "role": "regressor",
     "inputs": {"online_payment": "ONLINE", "card_transfer": "TRANSFER", "card_consumption": "CONSUMPTION", "gdp": "GDP"}},
    {"name": "A", "indicator": "conversion_cost", "role": "regressor", "stamp_duty_rate": 0.001,
     "inputs": {"commission": "COMMISSION", "stock_volume": "VOLUME"}},
    {"name": "r", "file": "rate.csv", "frequency": "quarterly", "role": "regressor"},
    {"name": "GDP", "file": "gdp.csv", "frequency": "quarterly", "role": "regressor", "transforms": ["log"]},
]


def config(variables) -> dict:
    return {
        "schema_version": 1,
        "variables": variables,
        "ardl": {"max_p": 2, "max_q": 2, "case": "II", "ecm_intercept": False},
        "adf": {
            "max_lag": 4,
            "level": {"deterministics": "constant_and_trend", "lags": "auto"},
            "difference": {"deterministics": "constant", "lags": "auto"},
        },
        "levels": [0.10, 0.05, 0.01],
        "diagnostics": {"bg_lags": 4, "reset_powers": [2]},
        "seed": SEED,
    }


def quarterly(name, values) -> TimeSeries:
    return TimeSeries(name, Frequency.QUARTERLY, START, values)


def random_walk(rng, n, drift, sd, start):
    return start + np.cumsum(drift + sd * rng.standard_normal(n))


def main() -> None:
    rng = np.random.default_rng(SEED)
    OUT.mkdir(parents=True, exist_ok=True)

    ln_gdp = random_walk(rng, N, 0.02, 0.012, math.log(1.0e5))
    gdp = np.exp(ln_gdp)
    mdi_target = np.exp(random_walk(rng, N, 0.025, 0.03, math.log(3.0)))
    shares = np.array([0.2, 0.5, 0.3])
    flows = mdi_target[:, None] * gdp[:, None] * shares * np.exp(0.02 * rng.standard_normal((N, 3)))
    online = flows[:, 0].copy()
    online[17] = math.nan  # one gap, filled linearly by the pipeline

    volume = np.exp(random_walk(rng, N, 0.01, 0.15, math.log(2.0e4)))
    commission_rate = np.clip(random_walk(rng, N, -1.5e-5, 8e-5, 1.2e-3), 2e-4, None)
    commission_q = commission_rate * volume
    commission_h = commission_q.reshape(-1, 2).sum(axis=1)
    rate = np.clip(random_walk(rng, N, -0.01, 0.12, 3.0), 0.5, None)

    write_series(quarterly("ONLINE", online), OUT / "online.csv")
    write_series(quarterly("TRANSFER", flows[:, 1]), OUT / "transfer.csv")
    write_series(quarterly("CONSUMPTION", flows[:, 2]), OUT / "consumption.csv")
    write_series(quarterly("GDP", gdp), OUT / "gdp.csv")
    write_series(TimeSeries("COMMISSION", Frequency.SEMIANNUAL, Period(2010, 1), commission_h), OUT / "commission.csv")
    write_series(quarterly("VOLUME", volume), OUT / "volume.csv")
    write_series(quarterly("r", rate), OUT / "rate.csv")

    # regressors exactly as the pipeline will see them
    regressor_only = [v for v in VARIABLES if v["name"] != "M0"]
    regressor_only = [dict(v, role="raw-component") if v["role"] == "dependent" else v for v in regressor_only]
    cfg = StudyConfig.from_dict(
        config(regressor_only + [{"name": "Y", "file": "gdp.csv", "frequency": "quarterly", "role": "dependent"}]),
        base_dir=OUT,
    )
    series, _ = prepare_variables(cfg)
    X = np.column_stack([series[name].values for name in ("MDI", "A", "r", "LNGDP")])

    y = np.empty(N)
    y[0] = CONST + X[0] @ THETA + 0.01
    for t in range(1, N):
        gap = y[t - 1] - CONST - X[t - 1] @ THETA
        y[t] = y[t - 1] + LAMBDA * gap + 0.2 * (X[t, 3] - X[t - 1, 3]) + 0.004 * rng.standard_normal()

    m0_quarter = np.exp(y) * SEASON[np.arange(N) % 4]
    within = np.array([0.995, 1.0, 1.005])
    monthly = (m0_quarter[:, None] * within).ravel()
    write_series(TimeSeries("M0", Frequency.MONTHLY, Period(2010, 1), monthly), OUT / "m0.csv")

    # a twice-cumulated series for the I(2) abort path
    level2 = 100.0 + np.cumsum(np.cumsum(rng.standard_normal(N)))
    write_series(quarterly("LEVEL2", level2), OUT / "level2.csv")

    (OUT / "study.json").write_text(json.dumps(config(VARIABLES), indent=2) + "\n", encoding="utf-8")
    i2 = [dict(v) for v in VARIABLES] + [
        {"name": "LEVEL2", "file": "level2.csv", "frequency": "quarterly", "role": "regressor"}
    ]
    (OUT / "study_i2.json").write_text(json.dumps(config(i2), indent=2) + "\n", encoding="utf-8")
    check()
    print(f"wrote synthetic study to {OUT}")


def check() -> None:
    """The bundled study must run cleanly and the I(2) variant must abort."""
    from moneydemand.pipeline import StageError, run_study

    report = run_study(StudyConfig.load(OUT / "study.json")).sections
    verdicts = [row["verdict"] for row in report["bounds"]["critical_values"]]
    assert verdicts == ["cointegrated"] * 3, verdicts
    assert -1.0 < report["ecm"]["lambda"] < 0.0
    try:
        run_study(StudyConfig.load(OUT / "study_i2.json"))
    except StageError as exc:
        assert exc.stage == "unit_root" and exc.variable == "LEVEL2", exc
    else:
        raise AssertionError("study_i2.json did not abort on the twice-cumulated series")


if __name__ == "__main__":
    main()
