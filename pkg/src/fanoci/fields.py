"""Coefficient fields: exact rationals and prime fields GF(p).

A ``FieldSpec`` names the field and provides the arithmetic on raw element
values.  Elements are kept as plain Python values rather than wrapper
objects, so polynomial arithmetic stays cheap:

  * rational field    -> ``fractions.Fraction``
  * prime field GF(p) -> ``int`` in ``[0, p)``

JSON tag format: ``"rational"`` or ``"gf:<p>"``.  Element strings are the
"num/den" rational format resp. the canonical decimal residue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Union

from .errors import InputError
from .rationals import format_rational, parse_rational

Element = Union[Fraction, int]

RATIONAL = "rational"
PRIME_FIELD = "prime-field"

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An exact coefficient field: the rationals or GF(p) for prime p."""

    kind: str
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.kind == RATIONAL:
            if self.characteristic != 0:
                raise InputError("rational field has characteristic 0")
        elif self.kind == PRIME_FIELD:
            if not is_prime(self.characteristic):
                raise InputError(f"{self.characteristic} is not prime")
        else:
            raise InputError(f"unknown field kind: {self.kind!r}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONAL)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME_FIELD, p)

    @classmethod
    def from_json_tag(cls, tag: str) -> "FieldSpec":
        if tag == "rational":
            return cls.rationals()
        if tag.startswith("gf:"):
            try:
                p = int(tag[3:])
            except ValueError as exc:
                raise InputError(f"bad field tag: {tag!r}") from exc
            return cls.prime(p)
        raise InputError(f"bad field tag: {tag!r}")

    # -- properties --------------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME_FIELD

    @property
    def json_tag(self) -> str:
        return "rational" if self.kind == RATIONAL else f"gf:{self.characteristic}"

    # -- element arithmetic -------------------------------------------------

    def zero(self) -> Element:
        return Fraction(0) if self.kind == RATIONAL else 0

    def one(self) -> Element:
        return Fraction(1) if self.kind == RATIONAL else 1

    def coerce(self, value) -> Element:
        """Normalize an int/Fraction into a canonical field element."""
        if self.kind == RATIONAL:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise InputError(f"cannot coerce {value!r} into the rational field")
        if isinstance(value, bool) or not isinstance(value, int):
            raise InputError(f"cannot coerce {value!r} into GF({self.characteristic})")
        return value % self.characteristic

    def add(self, a: Element, b: Element) -> Element:
        if self.kind == RATIONAL:
            return a + b
        return (a + b) % self.characteristic

    def sub(self, a: Element, b: Element) -> Element:
        if self.kind == RATIONAL:
            return a - b
        return (a - b) % self.characteristic

    def mul(self, a: Element, b: Element) -> Element:
        if self.kind == RATIONAL:
            return a * b
        return (a * b) % self.characteristic

    def neg(self, a: Element) -> Element:
        if self.kind == RATIONAL:
            return -a
        return (-a) % self.characteristic

    def inv(self, a: Element) -> Element:
        if not a:
            raise ZeroDivisionError("inverse of zero field element")
        if self.kind == RATIONAL:
            return 1 / Fraction(a)
        return pow(a, self.characteristic - 2, self.characteristic)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def pow(self, a: Element, e: int) -> Element:
        if e < 0:
            return self.inv(self.pow(a, -e))
        if self.kind == RATIONAL:
            return Fraction(a) ** e
        return pow(a, e, self.characteristic)

    # -- serialization and randomness ---------------------------------------

    def format_element(self, a: Element) -> str:
        return format_rational(a) if self.kind == RATIONAL else str(a)

    def parse_element(self, text: str) -> Element:
        if self.kind == RATIONAL:
            return parse_rational(text)
        try:
            return int(text) % self.characteristic
        except ValueError as exc:
            raise InputError(f"bad GF({self.characteristic}) element: {text!r}") from exc

    def random_element(self, rng: Random) -> Element:
        """Uniform over GF(p) (zero included); small integers over Q."""
        if self.kind == RATIONAL:
            return Fraction(rng.randint(-9, 9))
        return rng.randrange(self.characteristic)
