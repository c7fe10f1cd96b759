"""Fixed-point decimal and exact rational arithmetic.

Everything here is built on Python's arbitrary-size integers.  A
:class:`FixedDecimal` is an integer mantissa with a decimal scale
(``value = mantissa * 10**-scale``); all operations truncate toward zero
at an explicit precision, so results are bit-identical across runs and
platforms.  No binary floating point is used anywhere.

Exact rationals are :class:`fractions.Fraction` (aliased ``BigRational``),
which already guarantees the invariants this package needs: denominator
positive and gcd(numerator, denominator) == 1 after every operation.
"""

from __future__ import annotations

import math
import re
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError

BigRational = Fraction

# Internal computations carry this many digits beyond the requested
# precision before the final truncation.
GUARD_DIGITS = 10

_DECIMAL_RE = re.compile(r"^[+-]?[0-9]+(\.[0-9]+)?$")

# log10(2) as a rational approximation from below; used for exact decimal
# digit counts of huge integers without going through str().
_LOG10_2_NUM = 301029995663981
_LOG10_2_DEN = 10**15


def _int_str(n: int) -> str:
    """str(n) that transparently lifts CPython's int->str digit limit."""
    try:
        return str(n)
    except ValueError:
        sys.set_int_max_str_digits(digit_count(n) + 20)
        return str(n)


def _str_int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        sys.set_int_max_str_digits(len(s) + 20)
        return int(s)


def _idiv_trunc(n: int, d: int) -> int:
    """Integer division truncated toward zero (d != 0)."""
    if d < 0:
        n, d = -n, -d
    q = abs(n) // d
    return q if n >= 0 else -q


def digit_count(n: int) -> int:
    """Number of decimal digits of ``abs(n)``; digit_count(0) == 1."""
    n = abs(n)
    if n == 0:
        return 1
    e = ((n.bit_length() - 1) * _LOG10_2_NUM) // _LOG10_2_DEN
    while n < 10**e:
        e -= 1
    while n >= 10 ** (e + 1):
        e += 1
    return e + 1


@dataclass(frozen=True)
class Precision:
    """Number of decimal fraction digits carried by a fixed-point result."""

    digits: int

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError(f"precision must be >= 1 digit, got {self.digits}")


def _digits(p: Precision | int) -> int:
    d = p.digits if isinstance(p, Precision) else int(p)
    if d < 1:
        raise ValueError(f"precision must be >= 1 digit, got {d}")
    return d


@dataclass(frozen=True)
class FixedDecimal:
    """An exact decimal: ``mantissa * 10**-scale`` with scale >= 0.

    Instances are immutable and hashable; equality and ordering compare
    values (two representations of the same value at different scales
    compare equal).
    """

    mantissa: int
    scale: int = 0

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError(f"scale must be >= 0, got {self.scale}")

    @classmethod
    def from_int(cls, n: int, scale: int = 0) -> "FixedDecimal":
        """The value ``n`` represented at the given scale."""
        return cls(n * 10**scale, scale)

    @classmethod
    def parse(cls, text: str) -> "FixedDecimal":
        """Parse ``[+-]digits[.digits]``; scientific notation is rejected."""
        text = text.strip()
        if not _DECIMAL_RE.match(text):
            raise ParseError(f"not a plain decimal literal: {text!r}")
        if "." in text:
            intpart, fracpart = text.split(".")
            return cls(_str_int(intpart + fracpart), len(fracpart))
        return cls(_str_int(text), 0)

    # -- value helpers -------------------------------------------------

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def ulp(self) -> "FixedDecimal":
        """One unit in the last place at this value's scale."""
        return FixedDecimal(1, self.scale)

    def __str__(self) -> str:
        s = _int_str(abs(self.mantissa)).rjust(self.scale + 1, "0")
        sign = "-" if self.mantissa < 0 else ""
        if self.scale == 0:
            return sign + s
        return f"{sign}{s[:-self.scale]}.{s[-self.scale:]}"

    def __repr__(self) -> str:
        return f"FixedDecimal({self})"

    def _cmp_key(self, other: "FixedDecimal") -> tuple[int, int]:
        s = max(self.scale, other.scale)
        return (
            self.mantissa * 10 ** (s - self.scale),
            other.mantissa * 10 ** (s - other.scale),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a == b

    def __lt__(self, other: "FixedDecimal") -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: "FixedDecimal") -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: "FixedDecimal") -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: "FixedDecimal") -> bool:
        a, b = self._cmp_key(other)
        return a >= b

    def __hash__(self) -> int:
        m, s = self.mantissa, self.scale
        while s > 0 and m % 10 == 0:
            m //= 10
            s -= 1
        return hash((m, s))

    def __neg__(self) -> "FixedDecimal":
        return FixedDecimal(-self.mantissa, self.scale)

    def __abs__(self) -> "FixedDecimal":
        return FixedDecimal(abs(self.mantissa), self.scale)


FD_ZERO = FixedDecimal(0, 0)
FD_ONE = FixedDecimal(1, 0)
FD_TWO = FixedDecimal(2, 0)


def _rescale_trunc(m: int, from_scale: int, to_scale: int) -> int:
    """Mantissa rescaling with truncation toward zero."""
    if to_scale >= from_scale:
        return m * 10 ** (to_scale - from_scale)
    return _idiv_trunc(m, 10 ** (from_scale - to_scale))


def _rescale_floor(m: int, from_scale: int, to_scale: int) -> int:
    if to_scale >= from_scale:
        return m * 10 ** (to_scale - from_scale)
    return m // 10 ** (from_scale - to_scale)


def fd_trunc(a: FixedDecimal, p: Precision | int) -> FixedDecimal:
    """``a`` truncated toward zero at ``p`` fraction digits."""
    d = _digits(p)
    return FixedDecimal(_rescale_trunc(a.mantissa, a.scale, d), d)


def fd_floor(a: FixedDecimal, p: Precision | int) -> FixedDecimal:
    """``a`` rounded toward minus infinity at ``p`` fraction digits."""
    d = _digits(p)
    return FixedDecimal(_rescale_floor(a.mantissa, a.scale, d), d)


def fd_trunc_sig(a: FixedDecimal, sig: int) -> FixedDecimal:
    """``a`` truncated toward zero at ``sig`` significant digits.

    Zero stays zero.  For values < 1 the result keeps the leading zeros,
    e.g. trunc(0.0072177, 3 sig) == 0.00721.
    """
    if sig < 1:
        raise ValueError(f"need at least one significant digit, got {sig}")
    if a.mantissa == 0:
        return FD_ZERO
    # exponent of the leading digit: |value| in [10^e, 10^(e+1))
    e = digit_count(a.mantissa) - 1 - a.scale
    target = sig - 1 - e
    if target >= 0:
        return FixedDecimal(_rescale_trunc(a.mantissa, a.scale, target), target)
    # integer with trailing zeros
    keep = _idiv_trunc(a.mantissa, 10 ** (a.scale - target))
    return FixedDecimal(keep * 10**-target, 0)


def fd_leading_zeros(a: FixedDecimal) -> int:
    """Zeros between the decimal point and the first significant digit.

    0 for zero and for |a| >= 1.
    """
    if a.mantissa == 0:
        return 0
    return max(0, a.scale - digit_count(a.mantissa))


def fd_int_part(a: FixedDecimal) -> int:
    """Integer part of ``a`` truncated toward zero."""
    return _idiv_trunc(a.mantissa, 10**a.scale)


def fd_floor_int(a: FixedDecimal) -> int:
    """floor(a) as an integer."""
    return a.mantissa // 10**a.scale


def fd_add(a: FixedDecimal, b: FixedDecimal, p: Precision | int) -> FixedDecimal:
    d = _digits(p)
    s = max(a.scale, b.scale)
    m = a.mantissa * 10 ** (s - a.scale) + b.mantissa * 10 ** (s - b.scale)
    return FixedDecimal(_rescale_trunc(m, s, d), d)


def fd_sub(a: FixedDecimal, b: FixedDecimal, p: Precision | int) -> FixedDecimal:
    d = _digits(p)
    s = max(a.scale, b.scale)
    m = a.mantissa * 10 ** (s - a.scale) - b.mantissa * 10 ** (s - b.scale)
    return FixedDecimal(_rescale_trunc(m, s, d), d)


def fd_mul(a: FixedDecimal, b: FixedDecimal, p: Precision | int) -> FixedDecimal:
    d = _digits(p)
    m = a.mantissa * b.mantissa
    return FixedDecimal(_rescale_trunc(m, a.scale + b.scale, d), d)


def fd_div(a: FixedDecimal, b: FixedDecimal, p: Precision | int) -> FixedDecimal:
    """Exact quotient truncated toward zero at ``p`` digits."""
    if b.mantissa == 0:
        raise ZeroDivisionError("fd_div by zero")
    d = _digits(p)
    shift = d + b.scale - a.scale
    if shift >= 0:
        return FixedDecimal(_idiv_trunc(a.mantissa * 10**shift, b.mantissa), d)
    return FixedDecimal(_idiv_trunc(a.mantissa, b.mantissa * 10**-shift), d)


# -- integer square root and the audit counter -------------------------

_sqrt_calls = 0


def sqrt_call_count() -> int:
    """Total isqrt/fd_sqrt invocations since interpreter start."""
    return _sqrt_calls


class SqrtAudit:
    """Snapshot of the square-root call counter over a ``with`` block."""

    def __init__(self):
        self.calls = 0

    @property
    def count(self) -> int:
        return self.calls


@contextmanager
def sqrt_call_audit():
    """Count square-root invocations inside the ``with`` block."""
    audit = SqrtAudit()
    start = _sqrt_calls
    try:
        yield audit
    finally:
        audit.calls = _sqrt_calls - start


def isqrt(n: int) -> int:
    """Largest r with r*r <= n.  Raises DomainError for negative input."""
    global _sqrt_calls
    if n < 0:
        raise DomainError(f"isqrt of negative integer {n}")
    _sqrt_calls += 1
    return math.isqrt(n)


def fd_sqrt(a: FixedDecimal, p: Precision | int) -> FixedDecimal:
    """Square root truncated toward zero at ``p`` fraction digits."""
    if a.mantissa < 0:
        raise DomainError(f"fd_sqrt of negative value {a}")
    d = _digits(p)
    m = _rescale_trunc(a.mantissa, a.scale, 2 * d)
    return FixedDecimal(isqrt(m), d)


# -- conversions --------------------------------------------------------

def fd_to_rational(a: FixedDecimal) -> BigRational:
    """Exact conversion; the Fraction reduces itself."""
    return Fraction(a.mantissa, 10**a.scale)


def rat_to_fd(r: BigRational, p: Precision | int) -> FixedDecimal:
    """``r`` truncated toward zero at ``p`` fraction digits."""
    d = _digits(p)
    return FixedDecimal(_idiv_trunc(r.numerator * 10**d, r.denominator), d)


# -- rational arithmetic -------------------------------------------------
#
# Fraction already normalizes (gcd 1, positive denominator); these exist
# so that callers and tests have one obvious, named entry point.

def rat_add(a: BigRational, b: BigRational) -> BigRational:
    return a + b


def rat_sub(a: BigRational, b: BigRational) -> BigRational:
    return a - b


def rat_mul(a: BigRational, b: BigRational) -> BigRational:
    return a * b


def rat_div(a: BigRational, b: BigRational) -> BigRational:
    if b == 0:
        raise ZeroDivisionError("rat_div by zero")
    return a / b


def rat_parse(text: str) -> BigRational:
    """Parse "num/den" or a plain decimal into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return Fraction(_str_int(num.strip()), _str_int(den.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational literal: {text!r}") from exc
    return fd_to_rational(FixedDecimal.parse(text))


def rat_str(r: BigRational) -> str:
    """Format as "num/den"."""
    return f"{_int_str(r.numerator)}/{_int_str(r.denominator)}"


# -- decimal logarithm ---------------------------------------------------

def fd_log10(a: FixedDecimal, p: Precision | int) -> FixedDecimal:
    """log10(a) truncated toward zero at ``p`` digits, for a > 0.

    Uses pure-integer digit extraction: normalize a = x * 10^e with
    x in [1, 10), then repeatedly raise x to the 10th power; the decimal
    exponent of each power is the next fraction digit of log10(x).
    """
    if a.mantissa <= 0:
        raise DomainError(f"fd_log10 requires a positive argument, got {a}")
    d = _digits(p)
    e = digit_count(a.mantissa) - 1 - a.scale
    w = d + GUARD_DIGITS + 5
    # x = a / 10^e at scale w, value in [1, 10)
    xm = _rescale_trunc(a.mantissa, a.scale + e, w)
    ten_w = 10**w
    nfrac = d + 3
    frac = 0
    for _ in range(nfrac):
        # xm <- xm^10 at scale w (x^2, x^4, x^5, x^10)
        x2 = xm * xm // ten_w
        x4 = x2 * x2 // ten_w
        x5 = x4 * xm // ten_w
        xm = x5 * x5 // ten_w
        k = digit_count(xm // ten_w) - 1
        frac = frac * 10 + k
        xm //= 10**k
    total = e * 10**nfrac + frac
    return FixedDecimal(_rescale_trunc(total, nfrac, d), d)


def log10_int(n: int, p: Precision | int) -> FixedDecimal:
    """log10 of a positive integer, truncated at ``p`` digits."""
    if n <= 0:
        raise DomainError(f"log10_int requires a positive integer, got {n}")
    return fd_log10(FixedDecimal(n, 0), p)


def log10_rational(r: BigRational, p: Precision | int) -> FixedDecimal:
    """log10(|r|) for a nonzero rational, truncated at ``p`` digits."""
    if r == 0:
        raise DomainError("log10 of zero")
    d = _digits(p)
    return fd_sub(log10_int(abs(r.numerator), d + 2), log10_int(r.denominator, d + 2), d)
