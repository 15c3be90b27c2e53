#!/usr/bin/env python3
"""Fuzz the condition checkers: they must never fire on a false premise.

Generates random partitions lifted from finite quotients, runs the full
analysis on each, and fails loudly if any checker fires on a partition
without a repeated index, or if any fired checker flunks its own
verification (the exit-code-2 path).  Prints a status census at the end.
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from hsforge.partition import multiplicity  # noqa: E402
from hsforge.sampling import random_lifted_partition  # noqa: E402
from hsforge.theorems import analyze  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(
        description="soundness fuzzing harness for the condition checkers")
    parser.add_argument("--count", type=int, default=200,
                        help="number of random partitions (default 200)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-order", type=int, default=64,
                        help="largest quotient order to lift from")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    statuses: Counter[str] = Counter()
    failures = 0
    for n in range(args.count):
        rank = rng.choice((2, 2, 3))
        p = random_lifted_partition(rng, rank, max_order=args.max_order)
        analysis = analyze(p)
        has_repeat = bool(multiplicity(p))
        for report in analysis.reports:
            statuses[f"{report.name}: {report.status}"] += 1
            if report.status == "applies" and not has_repeat:
                print(f"[{n}] {report.name} fired without a repeated index: "
                      f"indices {list(p.indices)}")
                failures += 1
        if analysis.exit_code == 2:
            print(f"[{n}] self-verification failed: "
                  f"{analysis.soundness_problems}")
            failures += 1
    for key in sorted(statuses):
        print(f"{key:40s} {statuses[key]}")
    if failures:
        print(f"FAIL: {failures} soundness failures in {args.count} partitions")
        return 1
    print(f"ok: {args.count} partitions, no soundness failures")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
