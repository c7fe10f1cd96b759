"""Newton-Raphson machinery for the tangent and the second arctangent.

``tan_solve`` inverts the arctangent: z_{q+1} = z_q - (1+z_q^2)(arctan(z_q) - gamma),
so tan(gamma) is reached quadratically while only arctangent evaluations
are spent.  ``arctan_update`` performs one Newton step toward
arctan(1/beta2) given a tangent half-angle estimate; the many-digit
rational 1/beta2 enters exactly once, in a single subtraction.

Precision schedules grow the working precision alongside the iteration:
linearly (slope*q + offset) for the linear driver, or doubling with a cap
(min(base*2^q, cap)) for the quadratic one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arctan import arctan_gh, digits_per_term
from .bignum import (
    GUARD_DIGITS,
    BigRational,
    FixedDecimal,
    Precision,
    _digits,
    fd_add,
    fd_div,
    fd_leading_zeros,
    fd_mul,
    fd_sub,
    fd_to_rational,
    fd_trunc,
    rat_to_fd,
)
from .errors import DivergenceError, DomainError

FD_ONE = FixedDecimal(1, 0)

# Assumed worst-case decimal gain per series term when sizing arctangent
# term counts; the actual gain is used instead when it is lower.
_SAFE_GAIN = Fraction(4)


@dataclass(frozen=True)
class PrecisionSchedule:
    """Iteration-indexed working precision in decimal digits."""

    kind: str  # "linear" | "doubling"
    p1: int  # slope | base
    p2: int  # offset | cap

    @classmethod
    def linear(cls, slope: int, offset: int) -> "PrecisionSchedule":
        if slope < 1:
            raise ValueError(f"slope must be >= 1, got {slope}")
        return cls("linear", slope, offset)

    @classmethod
    def doubling(cls, base: int, cap: int) -> "PrecisionSchedule":
        if base < 1 or cap < base:
            raise ValueError(f"need 1 <= base <= cap, got base={base} cap={cap}")
        return cls("doubling", base, cap)

    def at(self, q: int) -> int:
        if q < 1:
            raise ValueError(f"iteration index must be >= 1, got {q}")
        if self.kind == "linear":
            return self.p1 * q + self.p2
        return min(self.p1 * 2**q, self.p2)

    @property
    def cap(self) -> int | None:
        return self.p2 if self.kind == "doubling" else None


@dataclass(frozen=True)
class TanSolveResult:
    z: FixedDecimal
    iterations: int
    final_precision: int


def _step_gain(gamma: FixedDecimal) -> Fraction:
    """Per-term decimal gain assumed for arctangent evaluations at z ~ tan(gamma)."""
    g = fd_to_rational(gamma)
    if g == 0:
        return _SAFE_GAIN
    return min(_SAFE_GAIN, fd_to_rational(digits_per_term(g)))


def tan_solve(
    gamma: FixedDecimal,
    z0: FixedDecimal,
    schedule: PrecisionSchedule,
    target_digits: int,
    steps: int | None = None,
    terms_for_step: Callable[[int], int] | None = None,
) -> TanSolveResult:
    """Solve tan(gamma) = z by Newton iteration on the arctangent.

    The iterate is stored at ``schedule.at(q)`` significant digits each
    step (plus the leading zeros of gamma); the arctangent term count for
    step q defaults to ceil(schedule.at(q-1) / gain) with the per-term
    gain capped at 4 digits.  Iteration runs until the schedule reaches
    ``target_digits`` + guard (or its cap) and then takes one more step;
    ``steps`` forces an exact number of Newton updates instead.

    Raises DivergenceError when the residual arctan(z) - gamma fails to
    shrink for three consecutive steps.
    """
    if target_digits < 1:
        raise ValueError(f"target_digits must be >= 1, got {target_digits}")
    if gamma.is_zero():
        return TanSolveResult(
            z=FixedDecimal(0, min(target_digits, z0.scale or 1)),
            iterations=1,
            final_precision=schedule.at(1),
        )
    lz = fd_leading_zeros(gamma)
    gain = _step_gain(gamma)

    if steps is not None:
        if steps < 1:
            raise ValueError(f"steps must be >= 1, got {steps}")
        q_final = steps + 1
    else:
        q = 2
        while True:
            prec = schedule.at(q)
            if prec >= target_digits + GUARD_DIGITS:
                break
            if schedule.cap is not None and prec >= schedule.cap:
                break
            q += 1
        q_final = q + 1

    z = z0
    prev_residual: FixedDecimal | None = None
    stalled = 0
    for q in range(2, q_final + 1):
        scale = schedule.at(q) + lz
        w = scale + GUARD_DIGITS
        if terms_for_step is not None:
            terms = terms_for_step(q)
        else:
            terms = max(1, math.ceil(Fraction(schedule.at(q - 1)) / gain))
        if z.is_zero():
            atan_z = FixedDecimal(0, w)
        else:
            atan_z = arctan_gh(fd_to_rational(z), terms, w)
        residual = fd_sub(atan_z, gamma, w)
        one_plus_z2 = fd_add(FD_ONE, fd_mul(z, z, w), w)
        z = fd_trunc(fd_sub(z, fd_mul(one_plus_z2, residual, w), w), scale)
        r = abs(residual)
        if prev_residual is not None and r >= prev_residual:
            stalled += 1
            if stalled >= 3:
                raise DivergenceError(
                    f"tangent solve stalled at iteration {q}; residual {residual}",
                    residual=str(residual),
                )
        else:
            stalled = 0
        prev_residual = r
    return TanSolveResult(z=z, iterations=q_final, final_precision=schedule.at(q_final))


def arctan_update(
    y_prev: FixedDecimal,
    tan_half: FixedDecimal,
    inv_beta2: BigRational,
    p: Precision | int,
) -> FixedDecimal:
    """One Newton step toward arctan(1/beta2).

    With t = tan(y_prev/2):
      y_next = y_prev - (1 - (2t/(1+t^2))^2) * (2t/(1-t^2) - 1/beta2)

    The rational 1/beta2 is converted to fixed point at ``p`` digits and
    used in the single subtraction; it never enters a series or a power.
    """
    d = _digits(p)
    if abs(tan_half) >= FD_ONE:
        raise DomainError(f"|tan(y/2)| must be < 1, got {tan_half}")
    w = d + GUARD_DIGITS
    t = tan_half
    a = fd_add(t, t, w)
    b = fd_mul(t, t, w)
    sin_est = fd_div(a, fd_add(FD_ONE, b, w), w)
    factor = fd_sub(FD_ONE, fd_mul(sin_est, sin_est, w), w)
    tan_est = fd_div(a, fd_sub(FD_ONE, b, w), w)
    target = rat_to_fd(Fraction(inv_beta2), d)
    correction = fd_mul(factor, fd_sub(tan_est, target, w), w)
    return fd_sub(y_prev, correction, d)
