"""Sparse multivariate polynomials over an exact field.

A polynomial stores a map from exponent vectors (one nonnegative integer
per variable) to nonzero coefficients:

    x^2*y + 3  over variables (x, y)  ->  {(2, 1): 1, (0, 0): 3}

The zero polynomial has an empty term map.  Values are immutable after
construction and safe to share across threads.  Terms are kept in graded
reverse lexicographic order (by the declared variable order, descending),
which makes serialization canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .errors import InputError
from .fields import Element, FieldSpec

Exponents = Tuple[int, ...]


def grevlex_key(exponents: Exponents):
    """Sort key under which larger monomials (graded reverse lex) compare larger."""
    return (sum(exponents), tuple(-e for e in reversed(exponents)))


def _normalize(
    fieldspec: FieldSpec, variables: Tuple[str, ...], terms: Mapping[Exponents, Element]
) -> Dict[Exponents, Element]:
    n = len(variables)
    out: Dict[Exponents, Element] = {}
    for exps, coeff in terms.items():
        exps = tuple(exps)
        if len(exps) != n:
            raise InputError(
                f"exponent vector {exps} has length {len(exps)}, expected {n}"
            )
        if any(e < 0 for e in exps):
            raise InputError(f"negative exponent in {exps}")
        value = fieldspec.coerce(coeff)
        if value:
            out[exps] = fieldspec.add(out[exps], value) if exps in out else value
            if not out[exps]:
                del out[exps]
    # grevlex-descending insertion order keeps iteration and dumps canonical
    return {e: out[e] for e in sorted(out, key=grevlex_key, reverse=True)}


@dataclass(frozen=True)
class MultiPoly:
    """Immutable sparse polynomial over a ``FieldSpec``."""

    field: FieldSpec
    variables: Tuple[str, ...]
    terms: Mapping[Exponents, Element] = field(default_factory=dict)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        fieldspec: FieldSpec,
        variables: Sequence[str],
        terms: Mapping[Exponents, Element] | Iterable[Tuple[Exponents, Element]],
    ) -> "MultiPoly":
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable names in {variables}")
        if not isinstance(terms, Mapping):
            terms = dict(terms)
        return cls(fieldspec, variables, _normalize(fieldspec, variables, terms))

    @classmethod
    def zero(cls, fieldspec: FieldSpec, variables: Sequence[str]) -> "MultiPoly":
        return cls.from_terms(fieldspec, variables, {})

    @classmethod
    def constant(
        cls, fieldspec: FieldSpec, variables: Sequence[str], value
    ) -> "MultiPoly":
        exps = (0,) * len(variables)
        return cls.from_terms(fieldspec, variables, {exps: value})

    @classmethod
    def variable(
        cls, fieldspec: FieldSpec, variables: Sequence[str], name: str
    ) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise InputError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls.from_terms(fieldspec, variables, {exps: 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def coefficient(self, exponents: Exponents) -> Element:
        return self.terms.get(tuple(exponents), self.field.zero())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponents, Element]]:
        return iter(self.terms.items())

    # -- arithmetic ---------------------------------------------------------

    def _coerce_operand(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.variables != self.variables:
                raise InputError("polynomials over different rings")
            return other
        return MultiPoly.constant(self.field, self.variables, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce_operand(other)
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = self.field.add(merged.get(exps, self.field.zero()), coeff)
        return MultiPoly.from_terms(self.field, self.variables, merged)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly.from_terms(
            self.field,
            self.variables,
            {e: self.field.neg(c) for e, c in self.terms.items()},
        )

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce_operand(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce_operand(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce_operand(other)
        product: Dict[Exponents, Element] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                coeff = self.field.mul(ca, cb)
                if exps in product:
                    product[exps] = self.field.add(product[exps], coeff)
                else:
                    product[exps] = coeff
        return MultiPoly.from_terms(self.field, self.variables, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError("polynomial power must be a nonnegative integer")
        result = MultiPoly.constant(self.field, self.variables, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, value) -> "MultiPoly":
        value = self.field.coerce(value)
        return MultiPoly.from_terms(
            self.field,
            self.variables,
            {e: self.field.mul(c, value) for e, c in self.terms.items()},
        )

    # -- the operations used by the dimension and regularity machinery ------

    def evaluate(self, point: Sequence[Element]) -> Element:
        """Exact evaluation by substitution."""
        values = [self.field.coerce(v) for v in point]
        if len(values) != len(self.variables):
            raise InputError(
                f"point has {len(values)} coordinates, expected {len(self.variables)}"
            )
        total = self.field.zero()
        for exps, coeff in self.terms.items():
            term = coeff
            for value, e in zip(values, exps):
                if e:
                    term = self.field.mul(term, self.field.pow(value, e))
            total = self.field.add(total, term)
        return total

    def homogeneous_components(self) -> Dict[int, "MultiPoly"]:
        """Decompose into {degree: homogeneous part}; only nonzero parts appear."""
        buckets: Dict[int, Dict[Exponents, Element]] = {}
        for exps, coeff in self.terms.items():
            buckets.setdefault(sum(exps), {})[exps] = coeff
        return {
            d: MultiPoly.from_terms(self.field, self.variables, terms)
            for d, terms in sorted(buckets.items())
        }

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        terms = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return MultiPoly.from_terms(self.field, self.variables, terms)

    def restrict_to_hyperplane(self, linear: "MultiPoly") -> "MultiPoly":
        """Substitute the hyperplane {linear = 0} into this polynomial.

        The eliminated variable is the highest-index variable carried by
        ``linear``; the result lives in the remaining variables.
        """
        linear = self._coerce_operand(linear)
        if linear.is_zero() or not linear.is_homogeneous() or linear.total_degree() != 1:
            raise InputError("restriction requires a nonzero homogeneous linear form")
        coeffs = [linear.coefficient(_unit(len(self.variables), i)) for i in range(len(self.variables))]
        pivot = max(i for i, c in enumerate(coeffs) if c)
        reduced_vars = self.variables[:pivot] + self.variables[pivot + 1 :]
        # x_pivot = -(sum of the other terms) / c_pivot on the hyperplane
        substitution = MultiPoly.zero(self.field, reduced_vars)
        inv_pivot = self.field.inv(coeffs[pivot])
        for i, c in enumerate(coeffs):
            if i == pivot or not c:
                continue
            factor = self.field.neg(self.field.mul(c, inv_pivot))
            substitution = substitution + MultiPoly.variable(
                self.field, reduced_vars, self.variables[i]
            ).scale(factor)
        images = [
            substitution
            if i == pivot
            else MultiPoly.variable(self.field, reduced_vars, v)
            for i, v in enumerate(self.variables)
        ]
        result = MultiPoly.zero(self.field, reduced_vars)
        for exps, coeff in self.terms.items():
            term = MultiPoly.constant(self.field, reduced_vars, coeff)
            for image, e in zip(images, exps):
                if e:
                    term = term * image**e
            result = result + term
        return result

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.json_tag,
            "variables": list(self.variables),
            "terms": [
                {"coeff": self.field.format_element(c), "exponents": list(e)}
                for e, c in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        try:
            fieldspec = FieldSpec.from_json_tag(data["field"])
            variables = tuple(data["variables"])
            raw_terms = data["terms"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc
        terms: Dict[Exponents, Element] = {}
        for entry in raw_terms:
            try:
                exps = tuple(entry["exponents"])
                coeff = fieldspec.parse_element(entry["coeff"])
            except (KeyError, TypeError) as exc:
                raise InputError(f"malformed polynomial term: {entry!r}") from exc
            terms[exps] = coeff
        return cls.from_terms(fieldspec, variables, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.terms.items():
            factors = [
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps)
                if e
            ]
            head = self.field.format_element(coeff)
            if factors and head == "1":
                pieces.append("*".join(factors))
            elif factors:
                pieces.append(head + "*" + "*".join(factors))
            else:
                pieces.append(head)
        return " + ".join(pieces)


def _unit(n: int, i: int) -> Exponents:
    return tuple(1 if j == i else 0 for j in range(n))


def monomials_of_degree(n_vars: int, degree: int) -> Iterator[Exponents]:
    """All exponent vectors of total degree exactly ``degree``."""
    if n_vars == 0:
        if degree == 0:
            yield ()
        return
    if n_vars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(n_vars - 1, degree - first):
            yield (first,) + rest


def random_poly(
    degree: int,
    variables: Sequence[str],
    fieldspec: FieldSpec,
    homogeneous: bool = False,
    seed: int = 0,
) -> MultiPoly:
    """Seed-deterministic random polynomial.

    Over GF(p) every monomial coefficient is drawn uniformly from the field
    (zero included), so the zero polynomial occurs with its natural
    probability.  With ``homogeneous=True`` only degree-``degree`` monomials
    are drawn; otherwise all monomials of total degree <= ``degree``.
    """
    if degree < 0:
        raise InputError("degree must be nonnegative")
    variables = tuple(variables)
    rng = Random(seed)
    degrees = [degree] if homogeneous else list(range(degree + 1))
    terms: Dict[Exponents, Element] = {}
    for d in degrees:
        for exps in sorted(monomials_of_degree(len(variables), d), key=grevlex_key, reverse=True):
            coeff = fieldspec.random_element(rng)
            if coeff:
                terms[exps] = coeff
    return MultiPoly.from_terms(fieldspec, variables, terms)
