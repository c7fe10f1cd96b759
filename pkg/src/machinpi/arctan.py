"""Arctangent evaluation engines.

Two series engines plus a split identity:

* ``arctan_euler`` -- the classical factorial series whose terms shrink by
  the factor x^2/(1+x^2);
* ``arctan_gh`` -- a two-sequence recurrence whose terms shrink by the
  much larger factor x^2/(4+x^2), i.e. a per-term decimal gain of
  log10(1 + 4/x^2);
* ``arctan_split`` -- arctan(x) rewritten as a sum of M smaller
  arctangents, with optional first- and third-order polynomial
  surrogates for the inner terms.

Arguments are exact rationals; evaluation is fixed point at the requested
precision plus guard digits, with strictly sequential summation so results
are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .bignum import (
    GUARD_DIGITS,
    BigRational,
    FixedDecimal,
    Precision,
    _digits,
    fd_add,
    fd_div,
    fd_log10,
    fd_mul,
    fd_sub,
    fd_to_rational,
    fd_trunc,
    rat_to_fd,
)
from .errors import DomainError

FD_ONE = FixedDecimal(1, 0)


@dataclass(frozen=True)
class SeriesState:
    """One step of the g/h recurrence.

    ``partial_sum`` accumulates g_m/((2m-1)(g_m^2+h_m^2)); the arctangent
    is twice the final partial sum.
    """

    g: FixedDecimal
    h: FixedDecimal
    m: int
    partial_sum: FixedDecimal


def gh_states(x: BigRational, terms: int, p: Precision | int) -> Iterator[SeriesState]:
    """Yield successive recurrence states for argument ``x`` != 0.

    g_1 = 2/x, h_1 = 1, and each step multiplies by (1 - 4/x^2) while
    mixing in 4/x of the other sequence.  All values are held at
    ``p + guard`` fraction digits.
    """
    if x == 0:
        raise DomainError("g/h recurrence is undefined at x = 0")
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    w = _digits(p) + GUARD_DIGITS
    x = Fraction(x)
    c_self = rat_to_fd(1 - 4 / (x * x), w)
    c_cross = rat_to_fd(4 / x, w)
    g = rat_to_fd(2 / x, w)
    h = FixedDecimal.from_int(1, w)
    partial = FixedDecimal(0, w)
    for m in range(1, terms + 1):
        denom = fd_add(fd_mul(g, g, w), fd_mul(h, h, w), w)
        term = fd_div(fd_div(g, denom, w), FixedDecimal(2 * m - 1), w)
        partial = fd_add(partial, term, w)
        yield SeriesState(g, h, m, partial)
        g, h = (
            fd_add(fd_mul(g, c_self, w), fd_mul(h, c_cross, w), w),
            fd_sub(fd_mul(h, c_self, w), fd_mul(g, c_cross, w), w),
        )


def arctan_gh(x: BigRational, terms: int, p: Precision | int) -> FixedDecimal:
    """arctan(x) by the g/h recurrence series, truncated at ``p`` digits."""
    d = _digits(p)
    last = None
    for last in gh_states(x, terms, d):
        pass
    w = d + GUARD_DIGITS
    return fd_trunc(fd_add(last.partial_sum, last.partial_sum, w), d)


def arctan_euler(x: BigRational, terms: int, p: Precision | int) -> FixedDecimal:
    """arctan(x) by the classical factorial series, truncated at ``p`` digits.

    x = 0 simply returns 0.
    """
    d = _digits(p)
    x = Fraction(x)
    if x == 0:
        return FixedDecimal(0, d)
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    w = d + GUARD_DIGITS
    ratio = rat_to_fd(x * x / (1 + x * x), w)
    term = rat_to_fd(x / (1 + x * x), w)
    total = term
    for m in range(1, terms):
        term = fd_mul(term, ratio, w)
        term = fd_div(fd_mul(term, FixedDecimal(2 * m), w), FixedDecimal(2 * m + 1), w)
        total = fd_add(total, term, w)
    return fd_trunc(total, d)


def digits_per_term(x: BigRational, p: Precision | int = 8) -> FixedDecimal:
    """Per-term decimal gain log10(1 + 4/x^2) of the g/h series."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("digits_per_term is undefined at x = 0")
    gain = 1 + 4 / (x * x)
    return fd_log10(rat_to_fd(gain, _digits(p) + GUARD_DIGITS), p)


def terms_for(x: BigRational, target_digits: int, p: Precision | int = 8) -> int:
    """Term count for ``target_digits`` correct digits: ceil(target/gain) + 2."""
    gain = fd_to_rational(digits_per_term(x, p))
    return max(1, math.ceil(Fraction(target_digits) / gain) + 2)


_SPLIT_MODES = ("exact-sum", "linear", "cubic")


def arctan_split(
    x: BigRational,
    m_split: int,
    truncation: str,
    p: Precision | int,
) -> FixedDecimal:
    """arctan(x) via the M-term split identity.

    ``exact-sum`` evaluates every inner arctangent with the g/h engine;
    ``linear`` replaces each inner arctangent by its argument; ``cubic``
    adds the -t^3/3 correction.
    """
    if m_split < 1:
        raise ValueError(f"split order must be >= 1, got {m_split}")
    if truncation not in _SPLIT_MODES:
        raise ValueError(f"truncation must be one of {_SPLIT_MODES}, got {truncation!r}")
    d = _digits(p)
    x = Fraction(x)
    inner = [
        Fraction(m_split) * x / (m_split * m_split + (m - 1) * m * x * x)
        for m in range(1, m_split + 1)
    ]
    if truncation == "exact-sum":
        w = d + GUARD_DIGITS
        total = FixedDecimal(0, w)
        for t in inner:
            if t == 0:
                continue
            total = fd_add(total, arctan_gh(t, terms_for(t, w), w), w)
        return fd_trunc(total, d)
    if truncation == "linear":
        return rat_to_fd(sum(inner, Fraction(0)), d)
    total = sum((t - t * t * t / 3 for t in inner), Fraction(0))
    return rat_to_fd(total, d)
