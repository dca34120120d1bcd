"""Command-line entry point.

    moneydemand run --config study.json [--out DIR]
    moneydemand adf --series m0.csv [--constant] [--trend] [--lags N]
    moneydemand bounds --config study.json
    moneydemand baumol --income Y --cost b --cbdc-cost b1 --rate r [--sweep b1:0.1:2:20]
    moneydemand report --inspect out/report.json

Exit codes: 0 success, 2 invalid input or config, 3 statistical precondition
failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .baumol import BaumolParams, cbdc_substitution, optimal_cash, sweep
from .csvio import read_series
from .pipeline import (
    REPORT_SCHEMA,
    ConfigError,
    StageError,
    StudyConfig,
    check_consistency,
    emit_report,
    render_text,
    run_study,
)
from .unitroot import AdfSpec, Deterministics, adf_test

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_IO = 0, 2, 3, 4


def _cmd_run(args) -> int:
    config = StudyConfig.load(args.config)
    out = Path(args.out) if args.out else (config.output_dir or Path("out"))
    report = run_study(config)
    for path in emit_report(report, out):
        print(path)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    report = run_study(StudyConfig.load(args.config), stop_after="bounds")
    check_consistency(report.sections)
    print(render_text(report.sections), end="")
    return EXIT_OK


def _cmd_adf(args) -> int:
    try:
        s = read_series(args.series)
    except OSError as exc:
        print(f"error: cannot read {args.series}: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.trend:
        det = Deterministics.CONSTANT_AND_TREND
    elif args.constant:
        det = Deterministics.CONSTANT
    else:
        det = Deterministics.NONE
    try:
        res = adf_test(s, AdfSpec(det, args.lags))
    except ValueError as exc:
        print(f"error: [adf] {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(f"series      {s.name} ({s.start.label(s.frequency)}..{s.end.label(s.frequency)})")
    print(f"form        {res.spec.code(res.lags)}")
    print(f"t-stat      {res.t_stat:.4f}")
    print(f"p-value     {res.approx_p:.4f}")
    print(f"n used      {res.n_used}")
    for level in sorted(res.critical_values):
        mark = "reject" if res.reject_at[level] else "do not reject"
        print(f"crit {round(level * 100):>2d}%    {res.critical_values[level]:.4f}  {mark}")
    return EXIT_OK


def _parse_sweep(text: str):
    try:
        param, lo, hi, steps = text.split(":")
        return param, float(lo), float(hi), int(steps)
    except ValueError:
        raise ValueError(f"--sweep expects param:from:to:steps, got {text!r}") from None


def _cmd_baumol(args) -> int:
    params = BaumolParams(args.income, args.cost, args.rate)
    sol = optimal_cash(params)
    sub = cbdc_substitution(params, args.cbdc_cost)
    print(f"K*          {sol.k_star:.10g}")
    print(f"M (cash)    {sub.m_cash:.10g}")
    print(f"M1 (CBDC)   {sub.m_cbdc:.10g}")
    print(f"delta       {sub.delta:.10g}")
    if args.sweep:
        param, lo, hi, steps = _parse_sweep(args.sweep)
        rows = sweep(params, args.cbdc_cost, param, lo, hi, steps)
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            with (out / "sweep.csv").open("w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow([param, "m_cash", "m_cbdc", "delta"])
                for r in rows:
                    w.writerow([repr(r[param]), repr(r["m_cash"]), repr(r["m_cbdc"]), repr(r["delta"])])
        except OSError as exc:
            print(f"error: cannot write sweep: {exc}", file=sys.stderr)
            return EXIT_IO
        print(out / "sweep.csv")
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        doc = json.loads(Path(args.inspect).read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"error: cannot read {args.inspect}: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: {args.inspect} is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not isinstance(doc, dict) or doc.get("schema") != REPORT_SCHEMA:
        print(f"error: {args.inspect} is not a {REPORT_SCHEMA} document", file=sys.stderr)
        return EXIT_INVALID
    try:
        check_consistency(doc)
        text = render_text(doc)
    except (AssertionError, KeyError, TypeError) as exc:
        print(f"error: inconsistent report: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moneydemand", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the full pipeline and write the report files")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="output directory (default: output_dir from the config, else ./out)")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("adf", help="augmented Dickey-Fuller test on one CSV series")
    p.add_argument("--series", required=True)
    p.add_argument("--constant", action="store_true")
    p.add_argument("--trend", action="store_true", help="constant and trend")
    p.add_argument("--lags", type=int, default=None, help="augmentation lags (default: automatic)")
    p.set_defaults(func=_cmd_adf)

    p = sub.add_parser("bounds", help="run up to the bounds cointegration test")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("baumol", help="Baumol-Tobin money demand with and without a CBDC")
    p.add_argument("--income", type=float, required=True)
    p.add_argument("--cost", type=float, required=True)
    p.add_argument("--cbdc-cost", type=float, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--sweep", help="param:from:to:steps with param in b1, r, b, Y")
    p.add_argument("--out", default=".", help="directory for sweep.csv")
    p.set_defaults(func=_cmd_baumol)

    p = sub.add_parser("report", help="validate and print a stored report.json")
    p.add_argument("--inspect", required=True)
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
