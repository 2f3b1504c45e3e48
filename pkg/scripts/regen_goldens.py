"""Rewrite tests/golden/figure{1..5}.csv from the current code.

Only run this after a deliberate change to a figure scenario; the
acceptance test compares against these files.
"""
from pathlib import Path

from jacasym import cli

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    for n in range(1, 6):
        code = cli.main(["figure", str(n), "--out", str(GOLDEN / f"figure{n}.csv")])
        print(f"figure {n}: exit {code}")


if __name__ == "__main__":
    main()
