"""machinpi: two-term Machin-like formulas for pi and digit computation.

Generates formulas pi/4 = 2**(k-1)*arctan(1/b1) + arctan(1/b2) from the
nested square-root ladder, scores them with the classical efficiency
measure sum(1/log10|b_j|), and computes pi digits through Newton-Raphson
driven linear and quadratic schemes using only integer and rational
arithmetic.
"""

__version__ = "0.1.0"

from .bignum import BigRational, FixedDecimal, Precision

__all__ = ["BigRational", "FixedDecimal", "Precision", "__version__"]
