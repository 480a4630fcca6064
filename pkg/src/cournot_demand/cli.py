"""Command-line front end: ``analyze`` one market or ``sweep`` a parameter."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .analysis import AnalysisConfig, SWEEP_PARAMS, dumps, run_analyze, run_sweep
from .errors import (AssumptionViolated, ConfigParse, CournotError, InconsistentVerdict,
                     QuadratureFailure)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ASSUMPTION = 3
EXIT_QUADRATURE = 4
EXIT_INCONSISTENT = 5
EXIT_NUMERIC = 6
EXIT_IO = 7

EPILOG = """exit codes:
  0  success
  2  ConfigParse: unreadable or invalid configuration / arguments
  3  AssumptionViolated: E[alpha] <= c or n < 1
  4  QuadratureFailure: numerical integration missed its tolerance
  5  InconsistentVerdict: class verdicts contradict each other (refine the grid)
  6  other numerical failure (ZeroSurvival, EmptyRegion, ...)
  7  file could not be read or written
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cournot-demand",
        description="Symmetric Cournot equilibria under a random demand intercept.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse one market", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    a.add_argument("--config", required=True, help="JSON configuration file")
    a.add_argument("--report", help="write the JSON report here (default: stdout)")
    a.add_argument("--grid-csv", help="also dump the shape-function grid as CSV")
    a.add_argument("--seed", type=int, help="override the configured seed")
    a.add_argument("--oracles", action="store_true", help="run Monte Carlo and best-response checks")

    s = sub.add_parser("sweep", help="repeat the analysis over parameter values", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("--config", required=True, help="JSON configuration file (the base market)")
    s.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    s.add_argument("--values", required=True, help="comma-separated values")
    s.add_argument("--out", help="write the CSV summary here (default: stdout)")
    return parser


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ConfigParse):
        return EXIT_CONFIG
    if isinstance(exc, AssumptionViolated):
        return EXIT_ASSUMPTION
    if isinstance(exc, QuadratureFailure):
        return EXIT_QUADRATURE
    if isinstance(exc, InconsistentVerdict):
        return EXIT_INCONSISTENT
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_NUMERIC


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = AnalysisConfig.from_file(args.config)
        if args.command == "analyze":
            cfg = replace(
                cfg,
                report_path=args.report or cfg.report_path,
                grid_csv_path=args.grid_csv or cfg.grid_csv_path,
                seed=cfg.seed if args.seed is None else args.seed,
                run_oracles=cfg.run_oracles or args.oracles,
            )
            report = run_analyze(cfg)
            if not cfg.report_path:
                sys.stdout.write(dumps(report))
        else:
            text = run_sweep(cfg, args.param, args.values, args.out)
            if not args.out:
                sys.stdout.write(text)
    except (CournotError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
