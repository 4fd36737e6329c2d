"""Command-line interface.

Subcommands
-----------
count   exact prime count at x
approx  one estimator at x, full precision plus the rounded value
table   recompute a published comparison table and report errata
fit     refit the correction model, result as JSON
scan    discontinuities of the correction (the primes of a range)

Exit codes: 0 success (reported errata are findings, not failures),
1 usage error, 2 domain or capacity error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from . import correction, counting, fitting, tables
from .approx import ApproxMethod, FitParams, LEGENDRE_B, PUBLISHED_FIT, estimate
from .errors import PrimeDensityError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

_SIEVE_DISPATCH_MAX = 1 << 26   # count: sieve below, combinatorial above


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_fit_params_option(parser: argparse.ArgumentParser, name: str, help_text: str):
    parser.add_argument(name, nargs=4, type=float, metavar=("A", "B", "C", "D"),
                        default=None, help=help_text)


def build_parser() -> _Parser:
    parser = _Parser(prog="primedensity",
                     description="Exact prime counts, density estimators, "
                                 "and the fitted correction model.")
    parser.add_argument("--no-timing", action="store_true",
                        help="suppress timing output (deterministic bytes)")
    parser.add_argument("--max-x-cap", type=int, default=None, metavar="X",
                        help="override the capacity ceiling of exact counters")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", parents=[], help="exact prime count")
    p_count.add_argument("x", type=int)

    p_approx = sub.add_parser("approx", help="evaluate one estimator")
    p_approx.add_argument("x", type=float)
    p_approx.add_argument("--method", required=True,
                          choices=[m.value for m in ApproxMethod])
    p_approx.add_argument("--legendre-b", type=float, default=LEGENDRE_B)
    _add_fit_params_option(p_approx, "--fit-params",
                           "correction-model parameters (default: published fit)")

    p_table = sub.add_parser("table", help="recompute a published table")
    p_table.add_argument("id", type=int, choices=[1, 2, 3])
    p_table.add_argument("--format", choices=["csv", "json", "markdown"],
                         default="csv")
    p_table.add_argument("--max-exponent", type=int, default=10,
                         help="table 1: largest exponent to recompute exactly")

    p_fit = sub.add_parser("fit", help="refit the correction model")
    sign = p_fit.add_mutually_exclusive_group()
    sign.add_argument("--corrected", action="store_true", default=True,
                      help="use the sign-corrected x=10 sample (default)")
    sign.add_argument("--published-sign", dest="corrected", action="store_false",
                      help="keep the x=10 sample exactly as printed")
    p_fit.add_argument("--data", metavar="CSV",
                       help="fit this exported dataset instead of the published one")
    _add_fit_params_option(p_fit, "--init", "initial parameter guess")
    p_fit.add_argument("--max-iterations", type=int, default=None)
    p_fit.add_argument("--gradient-tolerance", type=float, default=None)

    p_scan = sub.add_parser("scan", help="correction discontinuities in a range")
    p_scan.add_argument("lo", type=int)
    p_scan.add_argument("hi", type=int)
    p_scan.add_argument("--emit-figure-data", metavar="PATH",
                        help="also write (x, f) samples at every integer as CSV")
    return parser


def _cmd_count(args) -> int:
    t0 = time.monotonic()
    if args.x <= _SIEVE_DISPATCH_MAX:
        cap = args.max_x_cap or counting.DEFAULT_SIEVE_CAP
        pv = counting.prime_pi_sieve(args.x, cap=cap)
    else:
        cap = args.max_x_cap or counting.DEFAULT_COMBINATORIAL_CAP
        pv = counting.prime_pi_fast(args.x, cap=cap)
    elapsed = time.monotonic() - t0
    print(pv.count)
    print(f"source={pv.source.value}")
    if not args.no_timing:
        print(f"time={elapsed:.3f}s")
    return EXIT_OK


def _cmd_approx(args) -> int:
    fit = FitParams(*args.fit_params) if args.fit_params else PUBLISHED_FIT
    value = estimate(args.x, args.method, fit=fit, legendre_b=args.legendre_b)
    print(f"{value:.17g}")
    print(tables.round_half_away_from_zero(value))
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.id == 1:
        if not 1 <= args.max_exponent <= 13:
            raise PrimeDensityError(
                f"table 1 exact recomputation supports exponents 1..13, "
                f"got {args.max_exponent}")
        counts = {n: counting.prime_pi_fast(10 ** n)
                  for n in range(1, args.max_exponent + 1)}
        report = tables.build_correction_report(counts)
        renderers = {"csv": tables.correction_report_to_csv,
                     "json": tables.correction_report_to_json,
                     "markdown": tables.correction_report_to_markdown}
    else:
        build = tables.build_small_x_report if args.id == 2 else tables.build_powers_report
        report = build()
        renderers = {"csv": tables.estimator_report_to_csv,
                     "json": tables.estimator_report_to_json,
                     "markdown": tables.estimator_report_to_markdown}
    sys.stdout.write(renderers[args.format](report))
    return EXIT_OK


def _cmd_fit(args, parser: _Parser) -> int:
    if args.max_iterations is not None and args.max_iterations < 1:
        parser.error(f"--max-iterations must be >= 1, got {args.max_iterations}")
    if args.data:
        with open(args.data, "r", encoding="utf-8") as fh:
            dataset = correction.dataset_from_csv(fh.read())
    else:
        dataset = correction.published_dataset(corrected=args.corrected)
    option_overrides = {}
    if args.max_iterations is not None:
        option_overrides["max_iterations"] = args.max_iterations
    if args.gradient_tolerance is not None:
        option_overrides["gradient_tolerance"] = args.gradient_tolerance
    options = fitting.FitOptions(**option_overrides)
    init = FitParams(*args.init) if args.init else FitParams(1.0, -1.0, -1.0, 1.0)
    result = fitting.fit_lm(dataset, init, options)
    print(result.to_json())
    return EXIT_OK


def _cmd_scan(args) -> int:
    primes = correction.scan_discontinuities(args.lo, args.hi)
    if primes.size:
        print(" ".join(str(p) for p in primes.tolist()))
    if args.emit_figure_data:
        ns, fs = correction.correction_profile(args.lo, args.hi)
        with open(args.emit_figure_data, "w", encoding="utf-8") as fh:
            fh.write("x,f\n")
            for n, f in zip(ns.tolist(), fs.tolist()):
                fh.write(f"{n},{f:.17g}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "approx":
            return _cmd_approx(args)
        if args.command == "table":
            return _cmd_table(args)
        if args.command == "fit":
            return _cmd_fit(args, parser)
        return _cmd_scan(args)
    except PrimeDensityError as exc:
        print(f"primedensity: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"primedensity: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
