"""Two-term formula generation and the efficiency measure.

The second constant beta2 is an exact rational produced by the
double-angle iteration on the unit circle: starting from
(u, v) = ((b^2-1)/(b^2+1), 2b/(b^2+1)), squaring the angle k-1 times and
reading beta2 = 2u/(u^2 + (v-1)^2).  Direct complex exponentiation is
used nowhere; u^2 + v^2 = 1 holds exactly at every step.

For indices whose exact beta2 would be astronomically large, only
log10|beta2| is estimated: the residual angle
eps = pi/4 - 2^(k-1)*arctan(1/beta1) is computed against the reference
digit store and tan(eps) = 1/beta2 is recovered with the Newton tangent
solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import radicals
from .arctan import arctan_gh, terms_for
from .bignum import (
    GUARD_DIGITS,
    BigRational,
    FixedDecimal,
    Precision,
    _digits,
    _int_str,
    digit_count,
    fd_add,
    fd_div,
    fd_leading_zeros,
    fd_log10,
    fd_mul,
    fd_sub,
    fd_trunc,
    fd_trunc_sig,
    log10_int,
    log10_rational,
)
from .errors import DomainError, PrecisionError, SizeLimitError
from .solver import PrecisionSchedule, tan_solve
from .verify import ReferenceDigits, load_reference

# Exact beta2 computation refuses to build numbers beyond this many
# decimal digits; k = 27 (hundreds of millions of digits) stays out of
# desk scale by design.
DEFAULT_DIGIT_CAP = 10**7

# Precision at which logarithms of exact constants are carried.
_LOG_DIGITS = 30

FD_ONE = FixedDecimal(1, 0)


@dataclass(frozen=True)
class DoubleAngleState:
    """Exact point (u, v) on the unit circle after n-1 angle doublings."""

    u: BigRational
    v: BigRational
    n: int


def double_angle_states(beta1: int, k: int) -> Iterator[DoubleAngleState]:
    """Yield states n = 1..k of the doubling iteration for ``beta1``."""
    if beta1 < 1:
        raise ValueError(f"beta1 must be >= 1, got {beta1}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    b2 = beta1 * beta1
    u = Fraction(b2 - 1, b2 + 1)
    v = Fraction(2 * beta1, b2 + 1)
    yield DoubleAngleState(u=u, v=v, n=1)
    for n in range(2, k + 1):
        u, v = u * u - v * v, 2 * u * v
        yield DoubleAngleState(u=u, v=v, n=n)


def beta2_exact(beta1: int, k: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> BigRational:
    """Exact second constant via the double-angle iteration.

    Raises SizeLimitError when the estimated result size
    (~2^(k-1) * digits(beta1^2+1)) exceeds ``digit_cap``; use
    beta2_magnitude for such indices.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    estimated = 2 ** (k - 1) * digit_count(beta1 * beta1 + 1)
    if estimated > digit_cap:
        raise SizeLimitError(
            f"exact beta2 for k={k} would need ~{estimated} digits "
            f"(cap {digit_cap}); use beta2_magnitude instead"
        )
    last = None
    for last in double_angle_states(beta1, k):
        pass
    u, v = last.u, last.v
    denom = u * u + (v - 1) ** 2
    if denom == 0:
        raise DomainError("degenerate formula: u_k = 0 and v_k = 1")
    return 2 * u / denom


def beta2_magnitude(k: int, beta1: int, p: Precision | int) -> FixedDecimal:
    """log10|beta2| without constructing beta2.

    Needs p >= 0.302*k + 30 digits so that the residual angle is resolved;
    the result is then good to roughly p - 0.302*k - 20 digits.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    d = _digits(p)
    mult_digits = digit_count(2 ** (k - 1))
    if d < (302 * k + 999) // 1000 + 30:
        raise PrecisionError(
            f"beta2_magnitude needs at least {(302 * k + 999) // 1000 + 30} "
            f"digits for k={k}, got {d}"
        )
    ref = load_reference()
    w = d + GUARD_DIGITS + mult_digits
    quarter = ref.quarter_pi(w)
    first = arctan_gh(Fraction(1, beta1), terms_for(Fraction(1, beta1), w), w)
    eps = fd_sub(quarter, fd_mul(FixedDecimal(2 ** (k - 1)), first, w), w)
    if eps.is_zero():
        raise PrecisionError(f"residual angle underflowed at {d} digits for k={k}")
    target = d + fd_leading_zeros(eps)
    solved = tan_solve(
        gamma=eps,
        z0=fd_trunc(eps, 3),
        schedule=PrecisionSchedule.doubling(4, 2 * target + GUARD_DIGITS),
        target_digits=target,
    )
    log_tan = fd_log10(abs(solved.z), d)
    return FixedDecimal(-log_tan.mantissa, log_tan.scale)


def lehmer_measure(
    betas: list[FixedDecimal] | tuple[FixedDecimal, ...],
    sig_digits: int = 6,
) -> FixedDecimal:
    """Sum of reciprocal decimal logarithms, truncated to ``sig_digits``.

    ``betas`` holds log10|beta_j| for each term; every entry must be
    positive (all |beta_j| > 1), otherwise the measure is undefined.
    """
    if not betas:
        raise ValueError("need at least one term")
    w = _LOG_DIGITS
    total = FixedDecimal(0, w)
    for entry in betas:
        if entry.mantissa <= 0:
            raise DomainError(
                f"measure undefined: log10|beta| must be positive, got {entry}"
            )
        total = fd_add(total, fd_div(FD_ONE, entry, w), w)
    return fd_trunc_sig(total, sig_digits)


@dataclass(frozen=True)
class FormulaSpec:
    """One generated two-term formula.

    ``beta2`` is the exact rational when available, else None with only
    the magnitude ``beta2_log10_abs`` known.  ``mu`` is the efficiency
    measure at 6 significant digits.
    """

    k: int
    alpha1: int
    alpha2: int
    beta1: int
    beta2: BigRational | None
    beta2_log10_abs: FixedDecimal
    mu: FixedDecimal

    @property
    def is_exact(self) -> bool:
        return self.beta2 is not None


def generate(
    k: int, exact: bool = True, digit_cap: int = DEFAULT_DIGIT_CAP
) -> FormulaSpec:
    """Generate the two-term formula for index ``k``.

    With ``exact`` the second constant is the full rational (subject to
    the size cap); otherwise only its magnitude is estimated.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    b1 = radicals.beta1(k)
    log_b1 = log10_int(b1, _LOG_DIGITS)
    if exact:
        b2 = beta2_exact(b1, k, digit_cap)
        log_b2 = log10_rational(abs(b2), _LOG_DIGITS)
    else:
        b2 = None
        prec = max(60, (302 * k + 999) // 1000 + 35)
        log_b2 = beta2_magnitude(k, b1, prec)
    mu = lehmer_measure([log_b1, log_b2])
    return FormulaSpec(
        k=k,
        alpha1=2 ** (k - 1),
        alpha2=1,
        beta1=b1,
        beta2=b2,
        beta2_log10_abs=log_b2,
        mu=mu,
    )


@dataclass(frozen=True)
class ClassicalFormula:
    """A row of the classical integer-constant table."""

    name: str
    alpha1: int
    alpha2: int
    beta1: int
    beta2: int


def classical_table() -> list[ClassicalFormula]:
    """The only four two-term formulas with all four constants integer."""
    return [
        ClassicalFormula("Machin", 4, -1, 5, 239),
        ClassicalFormula("Euler", 1, 1, 2, 3),
        ClassicalFormula("Hermann", 2, -1, 2, 7),
        ClassicalFormula("Hutton", 2, 1, 3, 7),
    ]


def export_beta2(beta2: BigRational, path: str) -> None:
    """Write beta2 as two ASCII lines: numerator= and denominator=."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"numerator={_int_str(beta2.numerator)}\n")
        fh.write(f"denominator={_int_str(beta2.denominator)}\n")
