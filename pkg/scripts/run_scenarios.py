#!/usr/bin/env python3
"""Run every bundled scenario and summarize the outcomes.

Exit status follows the CLI convention: 1 if any step failed, else 2 if any
scenario reported a budget-limited outcome, else 0.
"""

from __future__ import annotations

import argparse
import sys
import time

from grouptrees.report import render_json
from grouptrees.scenarios import bundled_scenarios, run_scenario


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=None,
                        help="override each scenario's own seed")
    parser.add_argument("--json", action="store_true",
                        help="emit one canonical JSON report per scenario")
    parser.add_argument("names", nargs="*",
                        help="scenario names (default: all bundled)")
    args = parser.parse_args()

    bundled = bundled_scenarios()
    names = args.names or list(bundled)
    unknown = [n for n in names if n not in bundled]
    if unknown:
        print(f"unknown scenarios: {', '.join(unknown)}", file=sys.stderr)
        return 1

    worst = 0
    for name in names:
        started = time.monotonic()
        report = run_scenario(bundled[name], seed_override=args.seed)
        elapsed = time.monotonic() - started
        if args.json:
            sys.stdout.write(render_json(report))
        else:
            total = len(report["steps"])
            print(f"{name:14s} exit={report['exit_code']} "
                  f"steps={report['passed']}/{total} ({elapsed:.2f}s)")
            for row in report["steps"]:
                if not row["ok"]:
                    label = row.get("label", row["op"])
                    detail = row.get("error") or "; ".join(
                        row.get("mismatches", []))
                    print(f"    FAIL {label}: {detail}")
        code = report["exit_code"]
        if code == 1:
            worst = 1
        elif code == 2 and worst != 1:
            worst = 2
    return worst


if __name__ == "__main__":
    sys.exit(main())
