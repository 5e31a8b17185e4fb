"""Command-line front end: matrices, expansions, and the verification suites.

Subcommands
-----------
matrix          the base-change matrix A or its inverse B at order --n,
                symbolic by default, specialized through --a / --b
expand          expansion coefficients of a series over the elements
                z^n (az;q)_n/(bz;q)_n, computed by both routes
                (triangular solve and the closed formula) with agreement
gn              the polynomials g_n(q) of the b = aq specialization
verify          named symbolic identity checks at truncation order --n
verify-all      every registered symbolic check
numeric-verify  high-precision evaluation of one identity on a point
                grid (or the whole default battery)
bench           coarse wall-clock timings of representative computations

Parameters --a, --b and the entries of --coeffs use a small expression
grammar: integers, symbol names, + - * / ^ and parentheses.  The symbols
q, a, b are pre-declared; any other name is declared on first use.  The
series variable z is reserved and cannot appear in a coefficient.

Exit status is 0 when everything requested passed, 1 when any check
failed, and 2 for usage errors (malformed expressions, unknown names,
bad point files, out-of-region points).  For a fixed flag set and seed
the --output json stream is byte-identical across runs; bench is the
one exception, since it reports wall-clock times.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import OrderError, ParseError, QExpandError
from .identities import check_names, run_all, run_check
from .inversion import (
    base_matrix,
    expand_theorem15,
    expand_triangular,
    gn_polynomials,
    lt_inverse,
)
from .numeric import (
    DEFAULT_POINTS,
    DEFAULT_PRECISION,
    DEFAULT_TOLERANCE,
    NumericReport,
    check_identity_numeric,
    check_qqq,
    default_numeric_reports,
    numeric_check_names,
)
from .ring import RatFun, SymbolTable, expression_symbols, parse_ratfun
from .series import TruncSeries, base_element, qpow


@dataclass
class RunConfig:
    """Options shared by the subcommands; the seed fixes all randomized inputs."""

    order: int = 10
    output: str = "text"
    seed: int = 0
    precision: int = DEFAULT_PRECISION
    tolerance: Fraction = DEFAULT_TOLERANCE
    params: List[Tuple[str, str]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# output and parameter plumbing


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _parameter_table(*exprs: str) -> SymbolTable:
    """q, a, b plus any other symbol the expressions mention, in first-use order."""
    names = ["q", "a", "b"]
    for text in exprs:
        for nm in expression_symbols(text):
            if nm == "z":
                raise ParseError("'z' is the series variable, not a coefficient symbol")
            if nm not in names:
                names.append(nm)
    return SymbolTable(names)


def _builtin_series(name: str, table: SymbolTable, a: RatFun, b: RatFun,
                    order: int, k: int) -> TruncSeries:
    if name == "one":
        return TruncSeries.one(table, order)
    if name == "basek":
        if not 0 <= k <= order:
            raise OrderError(f"--k must lie in 0..{order}, got {k}")
        return base_element(k, a, b, order, table)
    # (1 + z) sum_n (-1)^n z^(2n) q^(n^2)
    zero = RatFun.zero(table)
    coeffs = [zero] * (order + 1)
    n = 0
    while 2 * n <= order:
        s = qpow(table, n * n)
        if n % 2:
            s = -s
        coeffs[2 * n] = coeffs[2 * n] + s
        if 2 * n + 1 <= order:
            coeffs[2 * n + 1] = coeffs[2 * n + 1] + s
        n += 1
    return TruncSeries(table, order, coeffs)


# ---------------------------------------------------------------------------
# subcommands


def cmd_matrix(config: RunConfig, args) -> int:
    table = _parameter_table(args.a, args.b)
    a = parse_ratfun(args.a, table)
    b = parse_ratfun(args.b, table)
    m = base_matrix(a, b, config.order)
    if args.which == "B":
        m = lt_inverse(m)
    entries = [[str(e) for e in row] for row in m.rows]
    if config.output == "json":
        _emit_json({
            "which": args.which,
            "n": config.order,
            "a": str(a),
            "b": str(b),
            "entries": entries,
        })
    else:
        lines = [f"{args.which}  (n = {config.order}, a = {a}, b = {b})"]
        for i, row in enumerate(entries):
            lines.append(f"  [{i}]  " + ",  ".join(row))
        _emit("\n".join(lines))
    return 0


def cmd_expand(config: RunConfig, args) -> int:
    texts = [t.strip() for t in args.coeffs.replace(",", " ").split()] if args.coeffs else []
    table = _parameter_table(args.a, args.b, *texts)
    a = parse_ratfun(args.a, table)
    b = parse_ratfun(args.b, table)
    if args.coeffs:
        if len(texts) > config.order + 1:
            raise OrderError(
                f"{len(texts)} coefficients exceed truncation order {config.order}"
            )
        given = [parse_ratfun(t, table) for t in texts]
        zero = RatFun.zero(table)
        f = TruncSeries(table, config.order,
                        given + [zero] * (config.order + 1 - len(given)))
    else:
        f = _builtin_series(args.builtin, table, a, b, config.order, args.k)
    r1 = expand_triangular(f, a, b)
    r2 = expand_theorem15(f, a, b)
    agree = all(x == y for x, y in zip(r1.coeffs, r2.coeffs))
    if config.output == "json":
        _emit_json({
            "n": config.order,
            "a": str(a),
            "b": str(b),
            "triangular_solve": [str(c) for c in r1.coeffs],
            "theorem15": [str(c) for c in r2.coeffs],
            "agree": agree,
        })
    else:
        lines = [f"expansion over z^n (az;q)_n/(bz;q)_n  (n = {config.order}, "
                 f"a = {a}, b = {b})"]
        for i, (x, y) in enumerate(zip(r1.coeffs, r2.coeffs)):
            note = "" if x == y else f"   closed formula disagrees: {y}"
            lines.append(f"  c[{i}] = {x}{note}")
        lines.append(f"methods agree: {'yes' if agree else 'NO'}")
        _emit("\n".join(lines))
    return 0 if agree else 1


def cmd_gn(config: RunConfig, args) -> int:
    table = SymbolTable(("q",))
    g = gn_polynomials(config.order, table)
    rendered = [str(g[m]) for m in range(1, config.order + 1)]
    if config.output == "json":
        _emit_json({"n": config.order, "g": rendered})
    else:
        lines = [f"g_{m} = {s}" for m, s in enumerate(rendered, start=1)]
        _emit("\n".join(lines) if lines else "(empty: --n 0)")
    return 0


def _emit_identity_reports(config: RunConfig, reports) -> int:
    if config.output == "json":
        _emit_json([r.to_json_dict() for r in reports])
    else:
        lines = []
        for r in reports:
            if r.passed:
                lines.append(f"{r.name}  (n = {r.order}): pass")
            else:
                f = r.first_failure
                lines.append(
                    f"{r.name}  (n = {r.order}): FAIL at z^{f.index}: "
                    f"lhs = {f.lhs}, rhs = {f.rhs}"
                )
        npass = sum(r.passed for r in reports)
        lines.append(f"{npass}/{len(reports)} checks passed")
        _emit("\n".join(lines))
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify(config: RunConfig, args) -> int:
    reports = [
        run_check(name, config.order, config.seed, perturb=args.perturb)
        for name in args.names
    ]
    return _emit_identity_reports(config, reports)


def cmd_verify_all(config: RunConfig, args) -> int:
    reports = run_all(config.order, args.filter, config.seed)
    return _emit_identity_reports(config, reports)


def _load_points(path: str) -> List[Dict[str, str]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"points file {path}: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(p, dict) for p in data):
        raise ParseError(f"points file {path}: expected a JSON array of objects")
    return data


def _to_fraction(text, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def cmd_numeric_verify(config: RunConfig, args) -> int:
    tol, prec = config.tolerance, config.precision
    if args.identity is None:
        if args.points:
            raise ParseError("--points requires --identity")
        reports = default_numeric_reports(tol, prec)
    elif args.identity == "qqq":
        cases = (_load_points(args.points) if args.points
                 else [{"m": m, "q": qv} for m in (1, 2, 3)
                       for qv in ("1/2", "1/3")])
        reports = []
        for case in cases:
            if "m" not in case or "q" not in case:
                raise ParseError("each qqq point needs \"m\" and \"q\"")
            m = int(str(case["m"]))
            reports.append(check_qqq(m, _to_fraction(case["q"], "q"), tol, prec))
    else:
        name = args.identity
        known = numeric_check_names() + ["qqq"]
        if name not in known:
            raise ParseError(f"unknown identity {name!r}; known: {', '.join(known)}")
        raw = _load_points(args.points) if args.points else DEFAULT_POINTS[name]
        points = [
            {k: _to_fraction(v, k) for k, v in p.items()} for p in raw
        ]
        reports = [check_identity_numeric(name, p, tol, prec) for p in points]
    if config.output == "json":
        _emit_json([r.to_json_dict() for r in reports])
    else:
        lines = []
        for r in reports:
            at = " ".join(f"{k}={v}" for k, v in r.point.items())
            lines.append(
                f"{r.name} @ {at}: {r.status}  "
                f"(|lhs - rhs| = {r.abs_diff}, tol = {r.tolerance}, "
                f"{r.precision} bits)"
            )
        npass = sum(r.passed for r in reports)
        lines.append(f"{npass}/{len(reports)} points passed")
        _emit("\n".join(lines))
    return 0 if all(r.passed for r in reports) else 1


def cmd_bench(config: RunConfig, args) -> int:
    rows = []

    def timed(task, fn):
        t0 = time.perf_counter()
        ok = bool(fn())
        rows.append({"task": task,
                     "seconds": round(time.perf_counter() - t0, 3),
                     "ok": ok})

    n = config.order
    table = SymbolTable(("q", "a", "b"))
    a = RatFun.sym(table, "a")
    b = RatFun.sym(table, "b")

    def inverse_pair():
        m = base_matrix(a, b, n)
        return (lt_inverse(m) @ m).is_identity()

    def dual_expand():
        rng = random.Random(config.seed)
        coeffs = [
            RatFun.from_fraction(table, Fraction(rng.randint(-9, 9),
                                                 rng.randint(1, 9)))
            for _ in range(n + 1)
        ]
        f = TruncSeries(table, n, coeffs)
        r1 = expand_triangular(f, a, b)
        r2 = expand_theorem15(f, a, b)
        return all(x == y for x, y in zip(r1.coeffs, r2.coeffs))

    timed(f"base_matrix + lt_inverse + product check (n = {n})", inverse_pair)
    timed(f"expansion, both routes, random series (n = {n})", dual_expand)
    for name in check_names():
        timed(f"identity {name} (n = {n})",
              lambda name=name: run_check(name, n, config.seed).passed)
    timed("numeric default battery",
          lambda: all(r.passed
                      for r in default_numeric_reports(config.tolerance,
                                                       config.precision)))

    if config.output == "json":
        _emit_json(rows)
    else:
        lines = [
            f"{row['seconds']:>9.3f}s  {'ok  ' if row['ok'] else 'FAIL'}  {row['task']}"
            for row in rows
        ]
        lines.append(f"{sum(r['seconds'] for r in rows):>9.3f}s  total")
        _emit("\n".join(lines))
    return 0 if all(r["ok"] for r in rows) else 1


# ---------------------------------------------------------------------------
# argument parsing


# flags whose value may start with '-' (e.g. --b "-q"); folded to --flag=value
# before argparse sees them, since argparse would read "-q" as an option
_VALUE_FLAGS = ("--a", "--b", "--coeffs")


def _fold_negative_values(argv: List[str]) -> List[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok in _VALUE_FLAGS and nxt.startswith("-") and not nxt.startswith("--"):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qexpand",
        description="expansions over z^n (az;q)_n/(bz;q)_n and their verification",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(p, with_order=True):
        if with_order:
            p.add_argument("--n", type=int, default=10,
                           help="truncation order (default %(default)s)")
        p.add_argument("--output", choices=("text", "json"), default="text",
                       help="report format (default %(default)s)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized inputs (default %(default)s)")

    def ab(p):
        p.add_argument("--a", default="a", metavar="EXPR",
                       help="value of a (default symbolic)")
        p.add_argument("--b", default="b", metavar="EXPR",
                       help="value of b (default symbolic)")

    p = sub.add_parser("matrix", help="base-change matrix A or inverse B")
    p.add_argument("--which", choices=("A", "B"), default="A",
                   help="which matrix (default %(default)s)")
    ab(p)
    common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("expand", help="expansion coefficients by both routes")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=("coogan_ono", "one", "basek"),
                     help="named input series")
    src.add_argument("--coeffs", metavar="LIST",
                     help="series coefficients c0,c1,... (expressions)")
    p.add_argument("--k", type=int, default=1,
                   help="index for --builtin basek (default %(default)s)")
    ab(p)
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("gn", help="polynomials g_n(q) of the b = aq case")
    common(p)
    p.set_defaults(func=cmd_gn)

    p = sub.add_parser("verify", help="run named symbolic identity checks")
    p.add_argument("names", nargs="+", metavar="NAME",
                   help=f"one of: {', '.join(check_names())}")
    p.add_argument("--perturb", type=int, default=None, metavar="INDEX",
                   help="scale RHS term INDEX by (1+q); the check must then fail")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="run every symbolic identity check")
    p.add_argument("--filter", default=None, metavar="SUBSTRING",
                   help="only checks whose name contains SUBSTRING")
    common(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("numeric-verify",
                       help="high-precision numeric check of an identity")
    p.add_argument("--identity", default=None, metavar="NAME",
                   help=f"one of: {', '.join(numeric_check_names() + ['qqq'])} "
                        "(default: whole battery)")
    p.add_argument("--points", default=None, metavar="FILE",
                   help="JSON array of points, e.g. [{\"q\": \"0.1\", ...}]")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                   help="working precision in bits (default %(default)s)")
    p.add_argument("--tol", type=Fraction, default=DEFAULT_TOLERANCE,
                   metavar="T", help="absolute tolerance (default 1e-25)")
    common(p, with_order=False)
    p.set_defaults(func=cmd_numeric_verify)

    p = sub.add_parser("bench", help="wall-clock timings of the main computations")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                   help="bits for the numeric battery (default %(default)s)")
    p.add_argument("--tol", type=Fraction, default=DEFAULT_TOLERANCE,
                   metavar="T", help="tolerance for the numeric battery")
    common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_fold_negative_values(raw))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    config = RunConfig(
        order=getattr(args, "n", 10),
        output=getattr(args, "output", "text"),
        seed=getattr(args, "seed", 0),
        precision=getattr(args, "precision", DEFAULT_PRECISION),
        tolerance=getattr(args, "tol", DEFAULT_TOLERANCE),
        params=[(nm, getattr(args, nm)) for nm in ("a", "b") if hasattr(args, nm)],
    )
    if config.order < 0:
        print("error: --n must be >= 0", file=sys.stderr)
        return 2
    if config.precision < 8:
        print("error: --precision must be >= 8 bits", file=sys.stderr)
        return 2
    try:
        return args.func(config, args)
    except QExpandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
