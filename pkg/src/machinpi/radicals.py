"""Nested square-root ladder and the certified integer first constant.

The ladder is c_1 = 0, c_j = sqrt(2 + c_{j-1}); it increases toward 2.
Each level is tracked as a rigorous enclosure built from directed
truncation: lower endpoints truncate down, upper endpoints get one extra
ulp.  The first formula constant for index k is the integer part of
c_{k+1} / sqrt(2 - c_k), certified by refining the working precision
until both enclosure endpoints land on the same integer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bignum import (
    FixedDecimal,
    Precision,
    _digits,
    fd_add,
    fd_div,
    fd_floor_int,
    fd_sqrt,
    fd_sub,
)
from .errors import PrecisionError

FD_TWO = FixedDecimal(2, 0)

# Refinement safety valve; the ratio is provably never an integer, so a
# handful of doublings always suffices in practice.
MAX_PRECISION_DOUBLINGS = 20


@dataclass(frozen=True)
class RadicalInterval:
    """Enclosure lo <= c_k <= hi of one ladder level."""

    lo: FixedDecimal
    hi: FixedDecimal
    k: int


def _ladder_endpoints(levels: int, w: int) -> list[tuple[FixedDecimal, FixedDecimal]]:
    """Enclosures for c_1 .. c_levels at working scale ``w`` (1-indexed)."""
    zero = FixedDecimal(0, w)
    out = [(zero, zero)]
    lo, hi = zero, zero
    for _ in range(levels - 1):
        lo = fd_sqrt(fd_add(FD_TWO, lo, w), w)
        up = fd_sqrt(fd_add(FD_TWO, hi, w), w)
        hi = FixedDecimal(up.mantissa + 1, w)
        out.append((lo, hi))
    return out


def c_ladder(k: int, p: Precision | int) -> RadicalInterval:
    """Enclosure of ladder level k (c_1 = 0, c_2 = sqrt(2), ...)."""
    if k < 1:
        raise ValueError(f"ladder index must be >= 1, got {k}")
    w = _digits(p)
    lo, hi = _ladder_endpoints(k, w)[k - 1]
    return RadicalInterval(lo=lo, hi=hi, k=k)


def initial_beta1_digits(k: int) -> int:
    """Starting precision: the ratio has about 0.302*k integer digits."""
    return (302 * k + 999) // 1000 + 20


def beta1(k: int) -> int:
    """Certified integer part of c_{k+1} / sqrt(2 - c_k).

    The enclosure of the ratio is refined by doubling the working
    precision until both endpoints have the same floor.
    """
    if k < 2:
        raise ValueError(f"formula index must be >= 2, got {k}")
    w = initial_beta1_digits(k)
    for _ in range(MAX_PRECISION_DOUBLINGS):
        ladder = _ladder_endpoints(k + 1, w)
        ck_lo, ck_hi = ladder[k - 1]
        cn_lo, cn_hi = ladder[k]
        diff_lo = fd_sub(FD_TWO, ck_hi, w)
        diff_hi = fd_sub(FD_TWO, ck_lo, w)
        if diff_lo.mantissa <= 0:
            w *= 2
            continue
        s_lo = fd_sqrt(diff_lo, w)
        s_hi = FixedDecimal(fd_sqrt(diff_hi, w).mantissa + 1, w)
        ratio_lo = fd_div(cn_lo, s_hi, w)
        ratio_hi = FixedDecimal(fd_div(cn_hi, s_lo, w).mantissa + 1, w)
        f_lo = fd_floor_int(ratio_lo)
        f_hi = fd_floor_int(ratio_hi)
        if f_lo == f_hi:
            return f_lo
        w *= 2
    raise PrecisionError(
        f"could not certify the integer part for k={k} after "
        f"{MAX_PRECISION_DOUBLINGS} precision doublings"
    )
