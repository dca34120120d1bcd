"""End-to-end study runner: ingest, preprocess, test, estimate, diagnose, report.

The study is described by a JSON config (see ``StudyConfig``). Every number
in the resulting report is a deterministic function of the config and the
input files.
"""

from __future__ import annotations

import copy
import csv
import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .ardl import (
    COINTEGRATED,
    INCONCLUSIVE,
    ArdlData,
    CriticalCase,
    bounds_f_test,
    bounds_verdict,
    build_ecm_series,
    fit_ardl,
    fit_ecm,
    long_run_coefficients,
    select_order_sbc,
)
from .csvio import frequency_of, read_series
from .diagnostics import breusch_godfrey, cusum, cusumsq, ramsey_reset, recursive_residuals
from .indicators import brokerage_conversion_cost, build_mdi
from .series import (
    Frequency,
    Period,
    TimeSeries,
    aggregate_to_quarterly,
    describe,
    fill_missing,
    interpolate_to_quarterly,
    jarque_bera,
    log_transform,
    parse_period,
    seasonal_adjust,
)
from .unitroot import HIGHER, AdfSpec, Deterministics, integration_order

SCHEMA_VERSION = 1
REPORT_SCHEMA = "moneydemand.report/1"
ROLES = ("dependent", "regressor", "raw-component")
TRANSFORMS = ("fill", "interpolate", "seasonal_adjust", "seasonal_adjust:additive", "seasonal_adjust:multiplicative", "log")
INDICATORS = {
    "mdi": ("online_payment", "card_transfer", "card_consumption", "gdp"),
    "conversion_cost": ("commission", "stock_volume"),
}


class ConfigError(ValueError):
    """Invalid or incomplete study configuration (exit code 2)."""


class StageError(RuntimeError):
    """A pipeline stage failed; carries the stage name and offending variable."""

    exit_code = 3

    def __init__(self, stage: str, message: str, variable: str | None = None):
        self.stage = stage
        self.variable = variable
        where = f"[{stage}]" + (f" variable {variable!r}:" if variable else "")
        super().__init__(f"{where} {message}")


class InputError(StageError):
    """Unreadable input or unwritable output (exit code 4)."""

    exit_code = 4


class DataError(StageError):
    """Malformed input data (exit code 2)."""

    exit_code = 2


@dataclass
class VariableSpec:
    name: str
    role: str
    transforms: list[str]
    file: Path | None = None
    frequency: Frequency | None = None
    aggregation: str = "mean"
    indicator: str | None = None
    inputs: dict[str, str] = field(default_factory=dict)
    stamp_duty_rate: float = 0.001

    @property
    def final_name(self) -> str:
        """Name after transforms (``log`` adds the ``LN`` prefix)."""
        return ("LN" + self.name) if "log" in self.transforms else self.name


@dataclass
class StudyConfig:
    variables: list[VariableSpec]
    max_p: int = 4
    max_q: int = 4
    bounds_case: CriticalCase = CriticalCase.III
    levels: tuple[float, ...] = (0.10, 0.05, 0.01)
    ecm_intercept: bool = False
    bg_lags: int = 4
    reset_powers: tuple[int, ...] = (2,)
    adf_level: AdfSpec = AdfSpec(Deterministics.CONSTANT_AND_TREND, None)
    adf_difference: AdfSpec = AdfSpec(Deterministics.CONSTANT, None)
    adf_overrides: dict[str, dict[str, AdfSpec]] = field(default_factory=dict)
    adf_max_lag: int | None = None
    sample_start: str | None = None
    sample_end: str | None = None
    min_extra_rows: int = 10
    seed: int = 0
    output_dir: Path | None = None
    raw: dict = field(default_factory=dict)
    base_dir: Path = Path(".")

    @property
    def dependent(self) -> VariableSpec:
        return next(v for v in self.variables if v.role == "dependent")

    @property
    def regressors(self) -> list[VariableSpec]:
        return [v for v in self.variables if v.role == "regressor"]

    @classmethod
    def load(cls, path) -> "StudyConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError("config", f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(raw, base_dir=path.parent)

    @classmethod
    def from_dict(cls, raw: dict, base_dir=".") -> "StudyConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        missing = [k for k in ("schema_version", "variables") if k not in raw]
        if missing:
            raise ConfigError("config is missing required field(s): " + ", ".join(missing))
        if raw["schema_version"] != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {raw['schema_version']!r} (expected {SCHEMA_VERSION})")
        base_dir = Path(base_dir)
        problems: list[str] = []
        variables = [_parse_variable(i, v, base_dir, problems) for i, v in enumerate(raw["variables"] or [])]
        variables = [v for v in variables if v is not None]
        finals = [v.final_name for v in variables]
        dupes = sorted({n for n in finals if finals.count(n) > 1})
        if dupes:
            problems.append("duplicate variable name(s) after transforms: " + ", ".join(dupes))
        roles = [v.role for v in variables]
        if roles.count("dependent") != 1:
            problems.append(f"exactly one dependent variable required (found {roles.count('dependent')})")
        if roles.count("regressor") < 1:
            problems.append("at least one regressor required")

        ardl = raw.get("ardl", {})
        diag = raw.get("diagnostics", {})
        adf = raw.get("adf", {})
        sample = raw.get("sample", {})
        levels = tuple(float(x) for x in raw.get("levels", (0.10, 0.05, 0.01)))
        if not levels or any(lv not in (0.10, 0.05, 0.01) for lv in levels):
            problems.append(f"levels must be a non-empty subset of 0.10, 0.05, 0.01 (got {list(levels)})")
        try:
            case = CriticalCase.parse(ardl.get("case", "III"))
        except ValueError as exc:
            problems.append(str(exc))
            case = CriticalCase.III
        try:
            adf_level = _parse_adf(adf.get("level"), AdfSpec(Deterministics.CONSTANT_AND_TREND, None))
            adf_diff = _parse_adf(adf.get("difference"), AdfSpec(Deterministics.CONSTANT, None))
            overrides = {
                name: {which: _parse_adf(spec, None) for which, spec in entry.items()}
                for name, entry in adf.get("overrides", {}).items()
            }
        except (ValueError, TypeError) as exc:
            problems.append(f"adf: {exc}")
            adf_level = adf_diff = AdfSpec()
            overrides = {}
        max_p, max_q = int(ardl.get("max_p", 4)), int(ardl.get("max_q", 4))
        if max_p < 1 or max_q < 0:
            problems.append("ardl.max_p must be >= 1 and ardl.max_q >= 0")
        bg_lags = int(diag.get("bg_lags", 4))
        if bg_lags < 1:
            problems.append("diagnostics.bg_lags must be >= 1")
        if problems:
            raise ConfigError("invalid config:\n  - " + "\n  - ".join(problems))
        out = raw.get("output_dir")
        return cls(
            variables=variables,
            max_p=max_p,
            max_q=max_q,
            bounds_case=case,
            levels=levels,
            ecm_intercept=bool(ardl.get("ecm_intercept", False)),
            bg_lags=bg_lags,
            reset_powers=tuple(int(p) for p in diag.get("reset_powers", (2,))),
            adf_level=adf_level,
            adf_difference=adf_diff,
            adf_overrides=overrides,
            adf_max_lag=None if adf.get("max_lag", "auto") == "auto" else int(adf["max_lag"]),
            sample_start=sample.get("start"),
            sample_end=sample.get("end"),
            min_extra_rows=int(ardl.get("min_extra_rows", 10)),
            seed=int(raw.get("seed", 0)),
            output_dir=(base_dir / out) if out else None,
            raw=copy.deepcopy(raw),
            base_dir=base_dir,
        )


def _parse_adf(spec, default):
    if spec is None:
        return default
    lags = spec.get("lags", "auto")
    return AdfSpec(Deterministics(spec.get("deterministics", "constant")), None if lags == "auto" else int(lags))


def _parse_variable(i: int, entry: dict, base_dir: Path, problems: list[str]) -> VariableSpec | None:
    where = f"variables[{i}]"
    if not isinstance(entry, dict):
        problems.append(f"{where}: expected an object")
        return None
    missing = [k for k in ("name", "role") if k not in entry]
    if "file" not in entry and "indicator" not in entry:
        missing.append("file (or indicator)")
    if missing:
        problems.append(f"{where}: missing field(s): " + ", ".join(missing))
        return None
    name = entry["name"]
    if entry["role"] not in ROLES:
        problems.append(f"{where} ({name}): role must be one of {ROLES}")
    transforms = list(entry.get("transforms", []))
    for t in transforms:
        if t not in TRANSFORMS:
            problems.append(f"{where} ({name}): unknown transform {t!r}")
    spec = VariableSpec(name=name, role=entry["role"], transforms=transforms)
    if "file" in entry:
        spec.file = base_dir / entry["file"]
        try:
            spec.frequency = frequency_of(entry.get("frequency", "quarterly"))
        except ValueError as exc:
            problems.append(f"{where} ({name}): {exc}")
        spec.aggregation = entry.get("aggregation", "mean")
        if spec.aggregation not in ("sum", "mean", "end_of_period"):
            problems.append(f"{where} ({name}): aggregation must be sum, mean or end_of_period")
    else:
        kind = entry["indicator"]
        if kind not in INDICATORS:
            problems.append(f"{where} ({name}): unknown indicator {kind!r}")
        else:
            inputs = entry.get("inputs", {})
            absent = [k for k in INDICATORS[kind] if k not in inputs]
            if absent:
                problems.append(f"{where} ({name}): indicator inputs missing: " + ", ".join(absent))
            spec.indicator = kind
            spec.inputs = dict(inputs)
            spec.stamp_duty_rate = float(entry.get("stamp_duty_rate", 0.001))
    return spec


def _to_quarterly(s: TimeSeries, spec: VariableSpec) -> TimeSeries:
    if s.frequency is Frequency.MONTHLY:
        return aggregate_to_quarterly(s, spec.aggregation)
    if s.frequency is Frequency.SEMIANNUAL:
        return interpolate_to_quarterly(s)
    if s.frequency is Frequency.ANNUAL:
        raise ValueError("annual data cannot be converted to quarterly")
    return s


def _apply_transforms(s: TimeSeries, spec: VariableSpec) -> TimeSeries:
    """Apply ``spec.transforms`` in order.

    Conversion to quarterly happens at the ``interpolate`` entry when one is
    listed, otherwise right after ``fill`` (or first, without ``fill``).
    """
    explicit = "interpolate" in spec.transforms
    if not explicit and "fill" not in spec.transforms:
        s = _to_quarterly(s, spec)
    for t in spec.transforms:
        if t == "fill":
            s = fill_missing(s)
            if not explicit:
                s = _to_quarterly(s, spec)
        elif t == "interpolate":
            if s.frequency is not Frequency.SEMIANNUAL:
                raise ValueError(f"interpolate expects semiannual data, got {s.frequency.value}")
            s = interpolate_to_quarterly(s)
        elif t.startswith("seasonal_adjust"):
            s = seasonal_adjust(s, t.partition(":")[2] or "additive")
        elif t == "log":
            s = log_transform(s)
    return s


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _trim(s: TimeSeries, start: str | None, end: str | None) -> TimeSeries:
    lo, hi = 0, len(s)
    base = s.start.ordinal(s.frequency)
    if start:
        p, _ = parse_period(start)
        lo = max(lo, p.ordinal(s.frequency) - base)
    if end:
        p, _ = parse_period(end)
        hi = min(hi, p.ordinal(s.frequency) - base + 1)
    if hi - lo < 1:
        raise ValueError("sample window leaves no observations")
    return s.replace(start=s.start.shift(lo, s.frequency), values=s.values[lo:hi])


def _common_window(named: dict[str, TimeSeries]) -> dict[str, TimeSeries]:
    """Trim same-frequency series to their overlapping periods."""
    first = next(iter(named.values()))
    if any(s.frequency is not first.frequency for s in named.values()):
        raise ValueError("indicator inputs have different frequencies")
    lo = max(s.start.ordinal(s.frequency) for s in named.values())
    hi = min(s.end.ordinal(s.frequency) for s in named.values())
    if hi < lo:
        raise ValueError("indicator inputs do not overlap")
    out = {}
    for key, s in named.items():
        a = lo - s.start.ordinal(s.frequency)
        out[key] = s.replace(start=Period.from_ordinal(lo, s.frequency), values=s.values[a : a + hi - lo + 1])
    return out


@dataclass
class ReportDocument:
    sections: dict[str, Any]
    stability_paths: dict[str, list[tuple]]

    def to_dict(self) -> dict:
        return self.sections


def _row(fit_row: dict) -> dict:
    return {k: fit_row[k] for k in ("term", "coefficient", "std_error", "t_stat", "p_value")}


def _adf_dict(res) -> dict | None:
    if res is None:
        return None
    return {
        "test_form": res.spec.code(res.lags),
        "deterministics": res.spec.deterministics.value,
        "lags": res.lags,
        "t_stat": res.t_stat,
        "p_value": res.approx_p,
        "critical_values": {_level_key(k): v for k, v in sorted(res.critical_values.items())},
        "reject_5pct": res.reject_at[0.05],
        "n_used": res.n_used,
    }


def _level_key(level: float) -> str:
    return f"{round(level * 100):d}%"


def _ecm_formula(dep: str, names, theta, intercept: float | None) -> str:
    parts = [f"ECM = {dep}"]
    for name, t in zip(names, theta):
        parts.append(f"{'-' if t >= 0 else '+'} {abs(t):.4f}*{name}")
    if intercept is not None:
        parts.append(f"{'-' if intercept >= 0 else '+'} {abs(intercept):.4f}")
    return " ".join(parts)


def prepare_variables(config: StudyConfig) -> tuple[dict[str, TimeSeries], dict[str, str]]:
    """Ingest and preprocess every entry; returns quarterly series by final name and input hashes."""
    inputs_hash: dict[str, str] = {}

    # ingest + preprocess, in config order so indicators can reference earlier entries
    processed: dict[str, TimeSeries] = {}
    for spec in config.variables:
        if spec.file is not None:
            try:
                raw = read_series(spec.file, name=spec.name)
            except OSError as exc:
                raise InputError("ingest", f"cannot read {spec.file}: {exc}", spec.name) from exc
            except ValueError as exc:
                raise DataError("ingest", str(exc), spec.name) from exc
            if raw.frequency is not spec.frequency:
                raise DataError(
                    "ingest",
                    f"file holds {raw.frequency.value} data but config says {spec.frequency.value}",
                    spec.name,
                )
            rel = spec.file.relative_to(config.base_dir) if spec.file.is_relative_to(config.base_dir) else spec.file
            inputs_hash[rel.as_posix()] = _sha256(spec.file)
        else:
            try:
                args = _common_window({k: processed[v] for k, v in spec.inputs.items()})
            except KeyError as exc:
                raise StageError("preprocess", f"indicator input {exc.args[0]!r} is not defined earlier", spec.name)
            except ValueError as exc:
                raise StageError("preprocess", str(exc), spec.name) from exc
            try:
                if spec.indicator == "mdi":
                    raw = build_mdi(**args)
                else:
                    raw = brokerage_conversion_cost(stamp_duty_rate=spec.stamp_duty_rate, **args)
            except ValueError as exc:
                raise StageError("preprocess", str(exc), spec.name) from exc
            raw = raw.replace(name=spec.name)
        try:
            s = _apply_transforms(raw, spec)
        except ValueError as exc:
            raise StageError("preprocess", str(exc), spec.name) from exc
        processed[spec.final_name] = s.replace(name=spec.final_name)

    return processed, inputs_hash


def run_study(config: StudyConfig, stop_after: str | None = None) -> ReportDocument:
    """Run the pipeline; ``stop_after="bounds"`` ends after the bounds test."""
    if stop_after not in (None, "bounds"):
        raise ValueError(f"unknown stop_after {stop_after!r}")
    warn_list: list[str] = []
    processed, inputs_hash = prepare_variables(config)
    dep_name = config.dependent.final_name
    reg_names = [v.final_name for v in config.regressors]
    model_series = []
    for name in [dep_name, *reg_names]:
        try:
            model_series.append(_trim(processed[name], config.sample_start, config.sample_end))
        except ValueError as exc:
            raise StageError("preprocess", str(exc), name) from exc

    # descriptive statistics
    descriptive = []
    for s in model_series:
        try:
            m = describe(s)
        except ValueError as exc:
            raise StageError("describe", str(exc), s.name) from exc
        jb = jarque_bera(m.skewness, m.kurtosis, m.n) if math.isfinite(m.skewness) else None
        descriptive.append(
            {
                "variable": s.name,
                "n": m.n,
                "mean": m.mean,
                "median": m.median,
                "max": m.max,
                "min": m.min,
                "std": m.std,
                "skewness": m.skewness,
                "kurtosis": m.kurtosis,
                "jb_stat": jb.stat if jb else None,
                "jb_p_value": jb.p_value if jb else None,
            }
        )

    # unit roots
    unit_root = []
    orders = []
    for s, spec in zip(model_series, [config.dependent, *config.regressors]):
        over = config.adf_overrides.get(s.name, config.adf_overrides.get(spec.name, {}))
        try:
            res = integration_order(
                s,
                over.get("level", config.adf_level),
                over.get("difference", config.adf_difference),
                max_lag=config.adf_max_lag,
            )
        except ValueError as exc:
            raise StageError("unit_root", str(exc), s.name) from exc
        orders.append(res.order)
        unit_root.append(
            {
                "variable": s.name,
                "level": _adf_dict(res.level_result),
                "difference": _adf_dict(res.diff_result),
                "order": res.label,
            }
        )
        if res.order == HIGHER:
            raise StageError(
                "unit_root",
                "series is integrated of order higher than one; the bounds test is only valid when "
                "variables do not exceed I(1)",
                s.name,
            )

    data = ArdlData.from_series(model_series[0], model_series[1:])
    min_rows = max(config.max_p, config.max_q) + config.min_extra_rows
    if data.n < min_rows:
        raise StageError(
            "order_selection",
            f"common sample of {data.n} observations is shorter than max lag + {config.min_extra_rows}",
        )

    try:
        sel = select_order_sbc(data, config.max_p, config.max_q)
    except ValueError as exc:
        raise StageError("order_selection", str(exc)) from exc
    order = sel.order

    try:
        bounds = bounds_f_test(data, order, config.bounds_case, integration_orders=orders)
    except ValueError as exc:
        raise StageError("bounds_test", str(exc)) from exc
    verdicts = {lv: bounds.verdict[lv] for lv in config.levels}
    conditional = any(v != COINTEGRATED for v in verdicts.values())
    if any(v == INCONCLUSIVE for v in verdicts.values()):
        warn_list.append("bounds test inconclusive at one or more levels; long-run results are conditional")
    if conditional:
        warn_list.append("long-run and ECM estimates are reported conditional on cointegration")

    sections = {
        "schema": REPORT_SCHEMA,
        "sample": {
            "frequency": data.frequency.value,
            "start": data.periods[0].label(data.frequency),
            "end": data.periods[-1].label(data.frequency),
            "n": data.n,
        },
        "descriptive": descriptive,
        "unit_root": unit_root,
        "order_selection": {
            "criterion": "SBC",
            "order": list(order.as_tuple()),
            "order_text": str(order),
            "max_p": config.max_p,
            "max_q": config.max_q,
            "common_sample_start": data.periods[sel.start].label(data.frequency),
            "candidates": [{"order": list(o.as_tuple()), "sbc": v} for o, v in sel.criterion_table],
        },
        "bounds": {
            "case": bounds.case.value,
            "k": bounds.k,
            "f_stat": bounds.f_stat,
            "n_restrictions": bounds.n_restrictions,
            "n_obs": bounds.n_obs,
            "critical_values": [
                {"level": _level_key(lv), "I0": bounds.rows[lv][0], "I1": bounds.rows[lv][1], "verdict": verdicts[lv]}
                for lv in sorted(config.levels, reverse=True)
            ],
            "label": f"F({dep_name} | {', '.join(reg_names)})",
        },
    }
    provenance = {
        "tool": "moneydemand",
        "version": __version__,
        "config": config.raw,
        "inputs_sha256": dict(sorted(inputs_hash.items())),
        "generated_at": None,
    }
    if stop_after == "bounds":
        sections["warnings"] = warn_list
        sections["provenance"] = provenance
        return ReportDocument(_clean(sections), {})

    try:
        levels_fit = fit_ardl(data, order)
        lr = long_run_coefficients(levels_fit)
    except ValueError as exc:
        raise StageError("long_run", str(exc)) from exc

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            ecm = fit_ecm(data, order, lr, include_intercept=config.ecm_intercept)
        except ValueError as exc:
            raise StageError("ecm", str(exc)) from exc
    warn_list.extend(str(w.message) for w in caught)

    try:
        lm = breusch_godfrey(levels_fit.fit, config.bg_lags)
        reset = ramsey_reset(levels_fit.fit, config.reset_powers)
    except ValueError as exc:
        raise StageError("diagnostics", str(exc)) from exc

    try:
        efit = ecm.fit
        w = recursive_residuals(efit.design, efit.y)
        labels = [p.label(data.frequency) for p in efit.design.index[efit.k :]]
        cs = cusum(w, efit.k, 0.05, periods=labels)
        css = cusumsq(w, efit.k, 0.05, periods=labels)
    except ValueError as exc:
        raise StageError("stability", str(exc)) from exc

    ecm_series = build_ecm_series(data, lr, config.ecm_intercept)
    sections.update(
        {
            "long_run": {
                "conditional_on_cointegration": conditional,
                "dof": lr.dof,
                "rows": [_row(r) for r in lr.table()],
                "ecm_definition": _ecm_formula(
                    dep_name, reg_names, lr.theta, lr.intercept if config.ecm_intercept else None
                ),
            },
            "ecm": {
                "rows": [_row(r) for r in ecm.short_run_table()],
                "lambda": ecm.lam,
                "adjustment_speed": ecm.adjustment_speed,
                "adjustment_text": ecm.speed_text(),
                "lambda_in_unit_interval": ecm.stable,
                "n_obs": ecm.fit.n,
                "ecm_series": {
                    "start": ecm_series.start.label(ecm_series.frequency),
                    "values": ecm_series.values.tolist(),
                },
            },
            "diagnostics": {
                "model": f"levels ARDL{order}",
                "lm": {"stat": lm.stat, "p_value": lm.p_value, "lags": config.bg_lags},
                "reset": {"stat": reset.stat, "p_value": reset.p_value, "dof": list(reset.dof)},
                "dw": levels_fit.fit.dw,
                "r2": levels_fit.fit.r2,
                "adj_r2": levels_fit.fit.adj_r2,
                "sbc": levels_fit.fit.sbc,
                "n_obs": levels_fit.fit.n,
            },
            "stability": {
                "model": "error-correction regression",
                "level": "5%",
                "cusum": {"stable": cs.stable, "points": len(cs.t), "path": cs.path.tolist(), "bound": cs.upper.tolist()},
                "cusumsq": {
                    "stable": css.stable,
                    "points": len(css.t),
                    "path": css.path.tolist(),
                    "lower": css.lower.tolist(),
                    "upper": css.upper.tolist(),
                },
            },
            "warnings": warn_list,
            "provenance": provenance,
        }
    )
    return ReportDocument(_clean(sections), {"cusum": cs.rows(), "cusumsq": css.rows()})


def _clean(obj):
    """Convert to plain JSON types; non-finite floats become None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _fmt_float(x: float) -> str:
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "inf" not in text and "nan" not in text:
        text += ".0"
    return text


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with insertion-ordered keys and 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) or v is None for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def check_consistency(sections: dict) -> None:
    """The printed verdicts must follow from the printed F and bounds."""
    b = sections["bounds"]
    for row in b["critical_values"]:
        expected = bounds_verdict(b["f_stat"], row["I0"], row["I1"])
        if expected != row["verdict"]:
            raise AssertionError(f"bounds verdict at {row['level']} is {row['verdict']!r}, decision rule gives {expected!r}")


def _num(x, width=10, digits=4) -> str:
    if x is None:
        return f"{'NA':>{width}}"
    return f"{x:>{width}.{digits}f}"


def _render_estimates(sections: dict) -> list[str]:
    lines = []
    o = sections["order_selection"]
    lines.append(f"ARDL{o['order_text']} selected by SBC")
    lr = sections["long_run"]
    head = f"{'Term':<14}{'Coefficient':>12}{'Std. error':>12}{'t-stat':>10}{'P-value':>10}"
    lines.append("Long-run coefficients" + (" (conditional on cointegration)" if lr["conditional_on_cointegration"] else ""))
    lines.append(head)
    for r in lr["rows"]:
        lines.append(f"{r['term']:<14}{_num(r['coefficient'], 12)}{_num(r['std_error'], 12)}{_num(r['t_stat'])}{_num(r['p_value'], 10, 3)}")
    lines.append("Short-run error-correction estimates")
    lines.append(head)
    for r in sections["ecm"]["rows"]:
        lines.append(f"{r['term']:<14}{_num(r['coefficient'], 12)}{_num(r['std_error'], 12)}{_num(r['t_stat'])}{_num(r['p_value'], 10, 3)}")
    e = sections["ecm"]
    lines.append(f"lambda = {e['lambda']:.4f}; adjustment speed {e['adjustment_text']}")
    lines.append(lr["ecm_definition"])
    d = sections["diagnostics"]
    lines.append("Model diagnostics (" + d["model"] + ")")
    lines.append(f"{'LM':>18}{'DW':>10}{'R2':>10}{'Adj. R2':>10}{'Ramsey':>20}")
    lines.append(
        f"{d['lm']['stat']:>10.4f} [{d['lm']['p_value']:.3f}]{d['dw']:>10.4f}{d['r2']:>10.5f}{d['adj_r2']:>10.4f}"
        f"{d['reset']['stat']:>11.4f} [{d['reset']['p_value']:.4f}]"
    )
    lines.append("")
    st = sections["stability"]
    lines.append(f"Stability ({st['model']}, {st['level']} bands)")
    lines.append(f"CUSUM:   {'stable' if st['cusum']['stable'] else 'UNSTABLE'} ({st['cusum']['points']} points)")
    lines.append(f"CUSUMSQ: {'stable' if st['cusumsq']['stable'] else 'UNSTABLE'} ({st['cusumsq']['points']} points)")
    return lines


def render_text(sections: dict) -> str:
    lines = []
    s = sections["sample"]
    lines.append(f"Sample: {s['start']} - {s['end']} ({s['frequency']}, n = {s['n']})")
    lines.append("")
    lines.append("Descriptive statistics")
    desc = sections["descriptive"]
    names = [d["variable"] for d in desc]
    lines.append(f"{'':<16}" + "".join(f"{n:>12}" for n in names))
    for key, label in [
        ("mean", "Mean"), ("median", "Median"), ("max", "Maximum"), ("min", "Minimum"),
        ("std", "Std. dev."), ("skewness", "Skewness"), ("kurtosis", "Kurtosis"),
        ("jb_stat", "Jarque-Bera"), ("jb_p_value", "P-value"),
    ]:
        lines.append(f"{label:<16}" + "".join(_num(d[key], 12) for d in desc))
    lines.append("")
    lines.append("ADF unit-root tests")
    lines.append(f"{'Variable':<12}{'Form (C,T,L)':>16}{'t-value':>10}{'P-value':>10}  Result")
    for u in sections["unit_root"]:
        for prefix, res in (("", u["level"]), ("D", u["difference"])):
            if res is None:
                continue
            verdict = "stationary" if res["reject_5pct"] else "non-stationary"
            lines.append(f"{prefix + u['variable']:<12}{res['test_form']:>16}{_num(res['t_stat'])}{_num(res['p_value'])}  {verdict}")
        lines.append(f"{'':<12}=> {u['order']}")
    lines.append("")
    b = sections["bounds"]
    lines.append(f"Bounds cointegration test (case {b['case']}, k = {b['k']})")
    lines.append(f"{'Level':<8}{'I(0)':>8}{'I(1)':>8}  Verdict")
    for row in b["critical_values"]:
        lines.append(f"{row['level']:<8}{row['I0']:>8.2f}{row['I1']:>8.2f}  {row['verdict']}")
    lines.append(f"{b['label']} = {b['f_stat']:.4f}")
    lines.append("")
    if "long_run" in sections:
        lines.extend(_render_estimates(sections))
    if sections["warnings"]:
        lines.append("")
        lines.append("Warnings:")
        lines.extend(f"  - {w}" for w in sections["warnings"])
    return "\n".join(lines) + "\n"


def _write_path_csv(rows: list[tuple], path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["period", "path", "lower", "upper"])
        for period, value, lo, hi in rows:
            w.writerow([period, _fmt_float(value), _fmt_float(lo), _fmt_float(hi)])


def emit_report(report: ReportDocument, out_dir) -> list[Path]:
    """Write report.json, report.txt, cusum.csv and cusumsq.csv into ``out_dir``."""
    check_consistency(report.sections)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        files = {
            "report.json": dumps(report.sections) + "\n",
            "report.txt": render_text(report.sections),
        }
        written = []
        for name, text in files.items():
            (out / name).write_text(text, encoding="utf-8")
            written.append(out / name)
        for name in ("cusum", "cusumsq"):
            _write_path_csv(report.stability_paths[name], out / f"{name}.csv")
            written.append(out / f"{name}.csv")
    except OSError as exc:
        raise InputError("emit", f"cannot write report to {out}: {exc}") from exc
    return written
