"""Exact rational numbers and binomial coefficients.

Every verdict-bearing comparison in this package is carried out on
``fractions.Fraction`` values (arbitrary-precision, always canonical:
positive denominator, gcd(|num|, den) = 1).  No floating point is used
anywhere on a pass/fail path; several audited inequalities are met with
exact equality and would be corrupted by rounding.

Serialization convention: ``"num/den"`` with the sign on the numerator and
the denominator omitted when it equals 1 (``"3"``, ``"-1/2"``).  This is
exactly ``str(Fraction)``, so reports diff bit-for-bit.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError

# Canonical exact rational type used across the package.
Rational = Fraction


def binomial(n: int, r: int) -> int:
    """Binomial coefficient n!/(r!(n-r)!) for r <= n, and 0 for r > n."""
    if n < 0 or r < 0:
        raise InputError(f"binomial arguments must be nonnegative, got ({n}, {r})")
    return math.comb(n, r)


def format_rational(value: Fraction | int) -> str:
    """Render a rational as "num/den" (denominator omitted when 1)."""
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    """Parse the "num/den" format back into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational literal: {text!r}") from exc
