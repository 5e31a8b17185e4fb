#!/usr/bin/env python3
"""How the symbolic core scales with the truncation order.

Times three representative computations over a range of orders: building
the base-change matrix and inverting it (with the product check), the
expansion of one random series by both routes, and one full identity
check.  Entry sizes grow quickly with the order, so the table is the
thing to consult before picking --n for a long verification run.

Examples
--------
    python3 scripts/order_scaling.py --orders 4 6 8 10
    python3 scripts/order_scaling.py --orders 4 8 12 --check rogers_fine --json
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from qexpand.identities import check_names, run_check
from qexpand.inversion import base_matrix, expand_theorem15, expand_triangular, lt_inverse
from qexpand.ring import RatFun, SymbolTable
from qexpand.series import TruncSeries


def _timed(fn):
    t0 = time.perf_counter()
    ok = bool(fn())
    return round(time.perf_counter() - t0, 3), ok


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[4, 6, 8, 10],
                    help="truncation orders to measure (default 4 6 8 10)")
    ap.add_argument("--check", default="theorem16_random",
                    help=f"identity to time; one of: {', '.join(check_names())}")
    ap.add_argument("--seed", type=int, default=0, help="seed for the random series")
    ap.add_argument("--json", action="store_true", help="emit a JSON document")
    args = ap.parse_args(argv)
    if args.check not in check_names():
        ap.error(f"unknown check {args.check!r}")

    table = SymbolTable(("q", "a", "b"))
    a, b = RatFun.sym(table, "a"), RatFun.sym(table, "b")
    rows = []
    for n in args.orders:
        if n < 0:
            ap.error("orders must be >= 0")
        rng = random.Random(args.seed)
        f = TruncSeries(table, n, [
            RatFun.from_fraction(table, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
            for _ in range(n + 1)
        ])

        def inverse_pair():
            m = base_matrix(a, b, n)
            return (lt_inverse(m) @ m).is_identity()

        def dual_expand():
            return expand_triangular(f, a, b).coeffs == expand_theorem15(f, a, b).coeffs

        t_inv, ok_inv = _timed(inverse_pair)
        t_exp, ok_exp = _timed(dual_expand)
        t_chk, ok_chk = _timed(lambda: run_check(args.check, n, args.seed).passed)
        rows.append({
            "order": n,
            "inverse_pair_s": t_inv,
            "dual_expand_s": t_exp,
            f"{args.check}_s": t_chk,
            "ok": ok_inv and ok_exp and ok_chk,
        })

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'n':>4}  {'inverse pair':>13}  {'dual expand':>12}  {args.check:>20}")
        for r in rows:
            print(f"{r['order']:>4}  {r['inverse_pair_s']:>12.3f}s  "
                  f"{r['dual_expand_s']:>11.3f}s  {r[f'{args.check}_s']:>19.3f}s"
                  + ("" if r["ok"] else "   FAIL"))
    return 0 if all(r["ok"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
