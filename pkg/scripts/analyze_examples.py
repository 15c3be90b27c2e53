#!/usr/bin/env python3
"""Run the full analysis on every bundled example partition.

Prints the text report for each file under data/ and exits with the worst
exit code seen, so a regression in any bundled example fails a shell check.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from hsforge import cli  # noqa: E402


def main() -> int:
    worst = 0
    for path in sorted((ROOT / "data").glob("*.partition")):
        print(f"== {path.name} ==")
        code = cli.main(["analyze", str(path)])
        print(f"exit code {code}")
        print()
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
