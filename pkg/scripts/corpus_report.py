#!/usr/bin/env python3
"""One-shot health report: every symbolic identity check plus the numeric
battery, with per-check wall-clock times.

Examples
--------
    python3 scripts/corpus_report.py
    python3 scripts/corpus_report.py --n 8 --json
"""

import argparse
import json
import sys
import time

from qexpand.identities import check_names, run_check
from qexpand.numeric import default_numeric_reports


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10, help="truncation order (default 10)")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    ap.add_argument("--json", action="store_true", help="emit a JSON document")
    args = ap.parse_args(argv)

    rows = []
    for name in check_names():
        t0 = time.perf_counter()
        report = run_check(name, args.n, args.seed)
        rows.append({
            "check": name,
            "order": args.n,
            "passed": report.passed,
            "seconds": round(time.perf_counter() - t0, 3),
        })
    t0 = time.perf_counter()
    numeric = default_numeric_reports()
    rows.append({
        "check": "numeric battery",
        "order": None,
        "passed": all(r.passed for r in numeric),
        "seconds": round(time.perf_counter() - t0, 3),
    })

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        width = max(len(r["check"]) for r in rows)
        for r in rows:
            mark = "pass" if r["passed"] else "FAIL"
            print(f"{r['check']:<{width}}  {mark}  {r['seconds']:>8.3f}s")
        total = sum(r["seconds"] for r in rows)
        print(f"{'total':<{width}}        {total:>8.3f}s")
    return 0 if all(r["passed"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
