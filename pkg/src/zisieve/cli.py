"""Unified command-line entry point.

Exit codes: 0 success, 1 usage error, 2 computation error.  All numeric
output is deterministic for a fixed configuration and cache.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import arith, chen, mertens, primes, sieve
from .config import Config, load_config_file, load_table
from .core import GaussianInt, format_gaussian, norm, parse_gaussian
from .quadrature import QuadratureError


class UsageError(Exception):
    pass


import re as _re


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let leading-minus Gaussian literals ('-1+3i', '-i') pass as
        # positionals; argparse installs its own matcher per instance
        self._negative_number_matcher = _re.compile(r"^-(\d+([+-]\d*i)?|\d*i)$")

    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(
        prog="zisieve",
        description="Gaussian-integer sieve workbench: primes, Mertens sums, "
        "linear-sieve functions, and exact N = p + P2 representation counts.",
    )
    p.add_argument("--cache", help="prime table cache file (or set ZISIEVE_CACHE)")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--jobs", type=int, help="worker processes for scans")
    p.add_argument("--output", choices=["text", "json", "csv"], help="output format")
    p.add_argument("--epsilon", type=float, help="linear-sieve epsilon, in (0, 1/200]")
    p.add_argument("--quad-tol", type=float, help="quadrature tolerance")
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("primes", help="build or refresh the prime table cache")
    sp.add_argument("--limit", type=int, required=True, help="cover norms < limit")
    sp.add_argument("--rebuild", action="store_true", help="force a rebuild")

    sp = sub.add_parser("factor", help="ideal factorization of a Gaussian integer")
    sp.add_argument("value")

    sp = sub.add_parser("pi", help="count prime ideals of norm <= x")
    sp.add_argument("x", type=float)

    sp = sub.add_parser("pi-cong", help="count prime elements = a (mod d), norm <= x")
    sp.add_argument("x", type=float)
    sp.add_argument("d")
    sp.add_argument("a")

    sp = sub.add_parser("mertens", help="Mertens-type sums over prime ideals")
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--csv", help="write a ladder of reports to CSV (plus figure)")

    sp = sub.add_parser("sing-series", help="singular series of an even target")
    sp.add_argument("value")
    sp.add_argument("--cutoff", type=float, help="first-factor truncation norm")

    sp = sub.add_parser("lattice-count", help="lattice points of norm <= x")
    sp.add_argument("x", type=float)

    sp = sub.add_parser("phi", help="Euler phi of the ideal generated by the value")
    sp.add_argument("value")

    sp = sub.add_parser("moebius", help="Moebius value of the generated ideal")
    sp.add_argument("value")

    sp = sub.add_parser("sieve-fn", help="linear-sieve functions F(s), f(s)")
    sp.add_argument("--s", type=float, required=True)

    sp = sub.add_parser(
        "sieve-demo",
        help="exact sieve count with Rosser and Jurkat-Richert bounds on A(N)",
    )
    sp.add_argument("--N", required=True, dest="target")
    sp.add_argument("--z", type=float, required=True)
    sp.add_argument("--D", type=float, required=True)

    sp = sub.add_parser("chen", help="representation report for one even target")
    sp.add_argument("--N", required=True, dest="target")
    sp.add_argument(
        "--verbose",
        action="store_true",
        help="also count without multiplicity (omega(m) <= 2)",
    )

    sp = sub.add_parser(
        "chen-scan",
        help="scan canonical even targets (one per associate class) by norm",
    )
    sp.add_argument("--min-norm", type=float, required=True)
    sp.add_argument("--max-norm", type=float, required=True)
    sp.add_argument("--csv", help="write rows to CSV (plus figure)")
    sp.add_argument("--jobs", type=int, dest="scan_jobs", help="override global --jobs")

    sub.add_parser("constants", help="c, the positivity margin, and the constants")
    return p


def _make_config(args) -> Config:
    values: dict = {}
    if args.config:
        values.update(load_config_file(args.config))
    if args.cache is not None:
        values["cache_path"] = args.cache
    if args.jobs is not None:
        values["jobs"] = args.jobs
    if args.output is not None:
        values["output"] = args.output
    if args.epsilon is not None:
        values["epsilon"] = args.epsilon
    if args.quad_tol is not None:
        values["quad_tol"] = args.quad_tol
    return Config(**values)


def _emit(payload: dict, cfg: Config, text_lines: list[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _parse_value(text: str) -> GaussianInt:
    try:
        return parse_gaussian(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- subcommand bodies ----------------------------------------------------------


def _cmd_primes(args, cfg: Config) -> int:
    table = load_table(cfg, args.limit, rebuild=args.rebuild, exact=True)
    count = table.count_norm_lt(args.limit)
    payload = {
        "limit": args.limit,
        "count": count,
        "cache": str(cfg.cache_path),
    }
    _emit(payload, cfg, [f"{count} prime ideals of norm < {args.limit}",
                         f"cache: {cfg.cache_path}"])
    return 0


def _cmd_factor(args, cfg: Config) -> int:
    value = _parse_value(args.value)
    fac = primes.factorize(value)
    parts = [f"({format_gaussian(p)})^{e}" for p, e in fac.factors]
    parts.append(f"unit({format_gaussian(fac.unit)})")
    text = " * ".join(parts)
    payload = {
        "value": format_gaussian(value),
        "unit": format_gaussian(fac.unit),
        "factors": [[format_gaussian(p), e] for p, e in fac.factors],
    }
    _emit(payload, cfg, [text])
    return 0


def _cmd_pi(args, cfg: Config) -> int:
    table = load_table(cfg, int(args.x) + 1)
    count = primes.pi_ideal(args.x, table)
    _emit({"x": args.x, "pi": count}, cfg, [str(count)])
    return 0


def _cmd_pi_cong(args, cfg: Config) -> int:
    d = _parse_value(args.d)
    a = _parse_value(args.a)
    table = load_table(cfg, int(args.x) + 1)
    count = primes.pi_congruence(args.x, d, a, table)
    main = 4.0 * primes.pi_ideal(args.x, table) / primes.euler_phi_ideal(d)
    payload = {
        "x": args.x,
        "d": format_gaussian(d),
        "a": format_gaussian(a),
        "count": count,
        "main_term": main,
        "delta": count - main,
    }
    _emit(payload, cfg, [f"{count} (main term {main:.3f}, delta {count - main:+.3f})"])
    return 0


_MERTENS_COLUMNS = ["x", "recip_sum", "fitted_B", "product_inv", "ratio_to_theory"]


def _mertens_row(rep: mertens.MertensReport) -> dict:
    return {
        "x": rep.x,
        "recip_sum": rep.recip_sum,
        "fitted_B": rep.fitted_B,
        "product_inv": rep.product_inv,
        "ratio_to_theory": rep.ratio_to_theory,
    }


def _cmd_mertens(args, cfg: Config) -> int:
    table = load_table(cfg, int(args.x) + 1)
    if args.csv:
        xs: list[float] = []
        steps = 24
        for i in range(steps + 1):
            x = 16.0 * (args.x / 16.0) ** (i / steps)
            x = float(round(x))
            if x >= 16 and (not xs or x > xs[-1]):
                xs.append(x)
        rows = [_mertens_row(mertens.mertens_report(x, table)) for x in xs]
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=_MERTENS_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
        from .plots import figure_path_for, render_mertens_figure

        fig = render_mertens_figure(rows, figure_path_for(args.csv))
        print(f"wrote {len(rows)} rows to {args.csv} and figure {fig}", file=sys.stderr)
        return 0
    rep = mertens.mertens_report(args.x, table)
    row = _mertens_row(rep)
    _emit(
        row,
        cfg,
        [
            f"x = {rep.x:g}",
            f"recip_sum = {rep.recip_sum!r}",
            f"fitted_B = {rep.fitted_B!r}",
            f"product_inv = {rep.product_inv!r}",
            f"ratio_to_theory = {rep.ratio_to_theory!r}",
        ],
    )
    return 0


def _cmd_sing_series(args, cfg: Config) -> int:
    value = _parse_value(args.value)
    cutoff = args.cutoff if args.cutoff is not None else float(cfg.prime_table_limit - 1)
    table = load_table(cfg, int(cutoff) + 1)
    ss = arith.singular_series(value, cutoff, table)
    payload = {"value": ss.value, "cutoff": ss.cutoff, "tail_bound": ss.tail_bound}
    _emit(payload, cfg, [json.dumps(payload)])
    return 0


def _cmd_lattice_count(args, cfg: Config) -> int:
    _emit({"x": args.x, "count": arith.lattice_count(args.x)}, cfg,
          [str(arith.lattice_count(args.x))])
    return 0


def _cmd_phi(args, cfg: Config) -> int:
    value = _parse_value(args.value)
    out = arith.euler_phi(primes.factorize(value))
    _emit({"value": format_gaussian(value), "phi": out}, cfg, [str(out)])
    return 0


def _cmd_moebius(args, cfg: Config) -> int:
    value = _parse_value(args.value)
    out = arith.moebius(primes.factorize(value))
    _emit({"value": format_gaussian(value), "moebius": out}, cfg, [str(out)])
    return 0


def _cmd_sieve_fn(args, cfg: Config) -> int:
    s = args.s
    fn = sieve.build_sieve_function_table(s_max=max(10.0, min(20.0, math.ceil(s))))
    payload = {"s": s, "F": fn.F(s), "f": fn.f(s)}
    _emit(payload, cfg, [f"F({s:g}) = {payload['F']!r}", f"f({s:g}) = {payload['f']!r}"])
    return 0


def _cmd_sieve_demo(args, cfg: Config) -> int:
    target = _parse_value(args.target)
    table = load_table(cfg, norm(target) + 1)
    problem = chen.build_A(target, table, z=args.z)
    exact = sieve.sieve_count(problem, table)
    sums = sieve.divisor_sums(problem, table, args.D)
    fn = sieve.build_sieve_function_table()
    jr = sieve.jr_bounds(problem, args.D, table, fn, eps=cfg.epsilon)
    payload = {
        "exact": exact,
        "lambda_lower": sums.lambda_lower,
        "lambda_upper": sums.lambda_upper,
        "jr_lower": jr.lower,
        "jr_upper": jr.upper,
        "remainder_sum": jr.remainder_sum,
    }
    _emit(
        payload,
        cfg,
        [
            f"|A| = {problem.total()}, S(A,P,z) = {exact}",
            f"lambda bounds: [{sums.lambda_lower}, {sums.lambda_upper}]",
            f"JR main terms: [{jr.lower!r}, {jr.upper!r}] at s = {jr.s!r}",
            f"remainder sum (level D): {jr.remainder_sum!r}",
        ],
    )
    return 0


def _cmd_chen(args, cfg: Config) -> int:
    target = _parse_value(args.target)
    table = load_table(cfg, norm(target) + 1)
    rep = chen.r_of_N(target, table, ss_cutoff=float(min(table.limit, 10**5)))
    payload = {
        "N": format_gaussian(rep.N),
        "norm": norm(rep.N),
        "r_value": rep.r_value,
        "goldbach_count": rep.goldbach_count,
        "singular_series": rep.singular_series,
        "lower_bound": rep.lower_bound,
        "ratio": rep.ratio,
    }
    if args.verbose:
        payload["r_value_distinct"] = chen.loose_r_of_N(target, table)
    print(json.dumps(payload))
    return 0


_SCAN_COLUMNS = [
    "N_re",
    "N_im",
    "norm",
    "r_value",
    "goldbach_count",
    "singular_series",
    "lower_bound",
    "ratio",
]


def _cmd_chen_scan(args, cfg: Config) -> int:
    if args.min_norm > args.max_norm:
        raise UsageError("--min-norm must not exceed --max-norm")
    table = load_table(cfg, int(args.max_norm) + 1)
    jobs = args.scan_jobs if args.scan_jobs is not None else cfg.jobs
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    reports = chen.chen_scan(
        args.min_norm,
        args.max_norm,
        table,
        jobs=jobs,
        ss_cutoff=float(min(table.limit, 10**5)),
    )
    rows = [
        {
            "N_re": rep.N.re,
            "N_im": rep.N.im,
            "norm": norm(rep.N),
            "r_value": rep.r_value,
            "goldbach_count": rep.goldbach_count,
            "singular_series": rep.singular_series,
            "lower_bound": rep.lower_bound,
            "ratio": rep.ratio,
        }
        for rep in reports
    ]
    counterexamples = [row for row in rows if row["goldbach_count"] == 0 and row["norm"] >= 4]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=_SCAN_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
        from .plots import figure_path_for, render_scan_figure

        fig = render_scan_figure(rows, figure_path_for(args.csv))
        print(f"wrote {len(rows)} rows to {args.csv} and figure {fig}", file=sys.stderr)
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=_SCAN_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    if counterexamples:
        # A goldbach-free even target would refute the stronger conjecture:
        # certify it loudly but do not fail the scan.
        print(
            "goldbach counterexample certificate: "
            + json.dumps(counterexamples),
            file=sys.stderr,
        )
    return 0


def _cmd_constants(args, cfg: Config) -> int:
    c_single = chen.constant_c(cfg.quad_tol)
    c_double = chen.constant_c_double(cfg.quad_tol)
    margin = chen.TWO_LOG3_MINUS_LOG6 - c_single
    cutoff = 10**5
    table = load_table(cfg, cutoff + 1)
    leading = arith.singular_first_factor(float(cutoff), table)
    payload = {
        "c": c_single,
        "c_double_integral": c_double,
        "two_log3_minus_log6": chen.TWO_LOG3_MINUS_LOG6,
        "positivity_margin": margin,
        "positive": margin > 0,
        "mertens_constant": mertens.MERTENS_CONSTANT,
        "singular_leading_product": leading,
        "leading_product_cutoff": cutoff,
    }
    _emit(
        payload,
        cfg,
        [
            f"c = {c_single!r} (double-integral check {c_double!r})",
            f"2 log 3 - log 6 - c = {margin!r} > 0: {margin > 0}",
            f"Mertens constant (pi/4) e^gamma = {mertens.MERTENS_CONSTANT!r}",
            f"singular-series leading product at {cutoff}: {leading!r}",
        ],
    )
    return 0


_COMMANDS = {
    "primes": _cmd_primes,
    "factor": _cmd_factor,
    "pi": _cmd_pi,
    "pi-cong": _cmd_pi_cong,
    "mertens": _cmd_mertens,
    "sing-series": _cmd_sing_series,
    "lattice-count": _cmd_lattice_count,
    "phi": _cmd_phi,
    "moebius": _cmd_moebius,
    "sieve-fn": _cmd_sieve_fn,
    "sieve-demo": _cmd_sieve_demo,
    "chen": _cmd_chen,
    "chen-scan": _cmd_chen_scan,
    "constants": _cmd_constants,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_usage(sys.stderr)
            return 1
        cfg = _make_config(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OverflowError, ZeroDivisionError, QuadratureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
