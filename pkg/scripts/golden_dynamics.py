#!/usr/bin/env python3
"""Walk through the golden-ratio interval system end to end.

Prints, with exact arithmetic throughout: the system itself, a truncated
orbit, the singular-orbit families, the balance identity report, the
support-iteration residual sequence from the frozen two-piece seed, an
indecomposability chain, and the discreteness heuristics for three
subgroups of the labelling free group.
"""

from __future__ import annotations

import argparse

from grouptrees.core import Scalar, parse_word
from grouptrees.corpus import (golden_grow_seed, golden_system,
                               index_two_cover_graph)
from grouptrees.intervals import Interval
from grouptrees.isometry_systems import (balance_report, discreteness_report,
                                         finite_orbit_families, grow_forest,
                                         indecomposability_search, orbit)
from grouptrees.stallings import build_core

S = Scalar.of


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--budget", type=int, default=200)
    parser.add_argument("--max-word", type=int, default=10)
    args = parser.parse_args()

    system = golden_system()
    print("generators:")
    for label, g in zip(system.labels, system.generators):
        print(f"  {label}: {g.dom} -> {g.ran}  (offset {g.offset})")

    status, points = orbit(system, S("1/2"), args.budget)
    print(f"\norbit of 1/2: {status} after {len(points)} points "
          f"(budget {args.budget})")

    families = finite_orbit_families(system, args.budget)
    print(f"finite-orbit families: {families['status']}, "
          f"e = {families['e']}")

    report = balance_report(system, args.max_word, args.budget)
    print(f"balance: m={report['m']} d={report['d']} e={report['e']} "
          f"residual={report['residual']} -> {report['verdict']}")

    print("\nsupport iteration from the frozen seed:")
    for stage in grow_forest(system, golden_grow_seed(), 8):
        print(f"  step {stage['step']}: residual {stage['residual']}")

    chain = indecomposability_search(
        system, Interval(S(0), S("1/10")), Interval(S("1/2"), S("3/5")),
        r_max=8, max_len=args.max_word)
    print(f"\nchain [0,1/10] -> [1/2,3/5]: {chain['status']} "
          f"(r={chain.get('r')})")
    for row in chain.get("chain", []):
        print(f"  {row['word']}: {row['interval']}")

    print("\ndiscreteness heuristics (sample point 0, budget 400):")
    subgroups = [
        ("whole group", build_core([parse_word("a", 2),
                                    parse_word("b", 2)], 2)),
        ("cyclic <a>", build_core([parse_word("a", 2)], 2)),
        ("index-2 extension", index_two_cover_graph()),
    ]
    for name, subgroup in subgroups:
        rep = discreteness_report(system, subgroup, [S(0)], 400)
        print(f"  {name}: {rep['verdict']} (min gap {rep['min_gap']})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
