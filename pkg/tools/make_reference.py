#!/usr/bin/env python3
"""Regenerate the built-in 10,000-digit pi reference store.

Two independent pipelines must agree before anything is written:

  1. 4*(4*arctan(1/5) - arctan(1/239)) with the factorial-series engine
  2. 4*(arctan(1/2) + arctan(1/3)) with the g/h recurrence engine

Run from the repository root:

    PYTHONPATH=src python3 tools/make_reference.py
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from machinpi.arctan import arctan_euler, arctan_gh, terms_for
from machinpi.bignum import FixedDecimal, fd_mul, fd_add, fd_sub, fd_trunc

DIGITS = 10_000
WORK = DIGITS + 50
OUT = Path(__file__).resolve().parent.parent / "src" / "machinpi" / "data" / "pi_10000.txt"


def pipeline_machin_euler(p: int) -> FixedDecimal:
    a5 = arctan_euler(Fraction(1, 5), int(p / 1.41) + 10, p)
    a239 = arctan_euler(Fraction(1, 239), int(p / 4.75) + 10, p)
    return fd_mul(FixedDecimal(4), fd_sub(fd_mul(FixedDecimal(4), a5, p), a239, p), p)


def pipeline_twoterm_gh(p: int) -> FixedDecimal:
    a2 = arctan_gh(Fraction(1, 2), terms_for(Fraction(1, 2), p), p)
    a3 = arctan_gh(Fraction(1, 3), terms_for(Fraction(1, 3), p), p)
    return fd_mul(FixedDecimal(4), fd_add(a2, a3, p), p)


def main() -> int:
    first = str(fd_trunc(pipeline_machin_euler(WORK), DIGITS))
    second = str(fd_trunc(pipeline_twoterm_gh(WORK), DIGITS))
    if first != second:
        for i, (a, b) in enumerate(zip(first, second)):
            if a != b:
                print(f"pipelines disagree at character {i}: {a!r} vs {b!r}")
                return 1
        print("pipelines disagree in length")
        return 1
    if not first.startswith("3.141592653589793238462643383279502884197"):
        print("generated digits fail the 40-digit sanity prefix")
        return 1
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("pi\n" + first + "\n", encoding="ascii")
    print(f"wrote {len(first) - 2} digits to {OUT}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
