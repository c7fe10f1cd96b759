"""Ground-truth digit store and digit-matching oracle.

The built-in reference ships as a data file with 10,000 digits of pi,
generated once by the slowest, most-trusted path available in this
package (the classical 4*arctan(1/5) - arctan(1/239) formula evaluated
with the plain factorial series) and cross-checked at build time against
a second formula/engine pair.  Nothing in this module is produced by the
fast drivers it is used to judge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .arctan import arctan_euler, arctan_gh, terms_for
from .bignum import FixedDecimal, fd_mul, fd_sub, fd_trunc
from .errors import IntegrityError, ParseError

EXPECTED_PREFIX = "3.141592653589793238462643383279502884197"

_BUILTIN_RESOURCE = "pi_10000.txt"
_SELFCHECK_GUARD = 10


@dataclass(frozen=True)
class ReferenceDigits:
    """Validated pi digits: the text "3." followed by N decimal digits."""

    digits: str
    source_label: str

    @property
    def fraction_digits(self) -> str:
        return self.digits[2:]

    def __len__(self) -> int:
        return len(self.fraction_digits)

    def as_fixed(self, p: int) -> FixedDecimal:
        """pi truncated at ``p`` fraction digits (p <= stored length)."""
        if p > len(self):
            raise IntegrityError(
                f"reference store holds {len(self)} digits, {p} requested"
            )
        return FixedDecimal.parse(self.digits[: p + 2])

    def quarter_pi(self, p: int) -> FixedDecimal:
        """pi/4 truncated at ``p`` fraction digits."""
        from .bignum import fd_div

        return fd_div(self.as_fixed(p + 2), FixedDecimal(4), p)


def _parse_store(text: str, label: str) -> ReferenceDigits:
    lines = text.strip().split("\n")
    if len(lines) != 2 or lines[0].strip() != "pi":
        raise ParseError(f"reference store {label!r}: expected 'pi' header line")
    digits = lines[1].strip()
    if not digits.startswith("3.") or not digits[2:].isdigit() or len(digits) < 42:
        raise ParseError(f"reference store {label!r}: malformed digit line")
    ref = ReferenceDigits(digits=digits, source_label=label)
    if ref.digits[: len(EXPECTED_PREFIX)] != EXPECTED_PREFIX:
        raise IntegrityError(
            f"reference store {label!r} failed the 40-digit prefix check"
        )
    return ref


def load_reference(path: str | None = None) -> ReferenceDigits:
    """Load and validate a digit store; default is the built-in file."""
    if path is None:
        text = (
            resources.files("machinpi")
            .joinpath("data", _BUILTIN_RESOURCE)
            .read_text(encoding="ascii")
        )
        return _parse_store(text, "builtin")
    with open(path, "r", encoding="ascii") as fh:
        return _parse_store(fh.read(), path)


def matched_digits(candidate: str, reference: ReferenceDigits) -> int:
    """Count of leading digits of ``candidate`` that agree with the store.

    The count is 1 for the integer part plus the number of consecutive
    matching digits after the decimal point.  A candidate that does not
    start with "3." scores 0.
    """
    if not candidate.startswith("3."):
        return 0
    cand = candidate[2:]
    ref = reference.fraction_digits
    n = 0
    for a, b in zip(cand, ref):
        if a != b:
            break
        n += 1
    return n + 1


@dataclass(frozen=True)
class SelfCheckReport:
    digits_checked: int
    euler_matched: int
    gh_matched: int

    @property
    def ok(self) -> bool:
        return min(self.euler_matched, self.gh_matched) >= self.digits_checked - 2


def _machin_pi(engine, p: int) -> FixedDecimal:
    one_fifth = Fraction(1, 5)
    one_239 = Fraction(1, 239)
    if engine is arctan_euler:
        # factorial series: per-term gain log10((1+x^2)/x^2)
        t5 = int(p / 1.41) + 10
        t239 = int(p / 4.75) + 10
    else:
        t5 = terms_for(one_fifth, p)
        t239 = terms_for(one_239, p)
    a5 = engine(one_fifth, t5, p)
    a239 = engine(one_239, t239, p)
    q = fd_sub(fd_mul(FixedDecimal(4), a5, p), a239, p)
    return fd_mul(FixedDecimal(4), q, p)


def selfcheck_machin(
    digits: int = 500, reference: ReferenceDigits | None = None
) -> SelfCheckReport:
    """Recompute pi with both arctangent engines and score both against
    the reference store.

    Raises IntegrityError, naming the first mismatching position, if
    either engine disagrees with the store before the truncation-noise
    zone (the final two digits).
    """
    ref = reference if reference is not None else load_reference()
    p = digits + _SELFCHECK_GUARD
    results = {}
    for name, engine in (("euler", arctan_euler), ("gh", arctan_gh)):
        approx = fd_trunc(_machin_pi(engine, p), digits)
        results[name] = matched_digits(str(approx), ref)
    report = SelfCheckReport(
        digits_checked=digits,
        euler_matched=results["euler"],
        gh_matched=results["gh"],
    )
    if not report.ok:
        bad = min(results, key=results.get)
        raise IntegrityError(
            f"self-check: {bad} engine first disagrees with the reference at "
            f"digit {results[bad] + 1} of {digits}"
        )
    return report
