"""Projective codimension and regular-sequence decisions for homogeneous ideals.

Codimension convention: for homogeneous q_1..q_j in n variables, the
vanishing locus Z(q_1..q_j) in affine n-space is a cone through the origin;
we report codim = n - dim Z, where dim Z comes from the Groebner staircase.
This equals the minimum over irreducible components of their projective
codimension, because the dimension of a reducible variety is the maximum
over components.  A cone equal to {0} alone (dim 0) has empty projective
locus and codimension n.

Regularity at the origin is decided through the same cone codimension: an
ordered sequence of homogeneous forms is regular iff every length-j prefix
cuts the cone down to codimension exactly j.  (For homogeneous elements of
the local ring at the origin the two notions agree.)

The probabilistic oracle estimates the cone dimension by slicing with
random linear subspaces over GF(p^e), e <= 2, and testing by point
enumeration whether anything beyond the origin survives (the default e = 2
scan covers the GF(p)-points inside GF(p^2)).  It exists to cross-validate
the exact kernel, never to replace it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import List, Optional, Sequence, Tuple

from .errors import InputError, ResourceBudgetError, UnsupportedModeError
from .fields import FieldSpec
from .groebner import GroebnerBasis, TermOrder, groebner_basis, staircase_dimension
from .polynomials import MultiPoly
from .rationals import format_rational

EXACT = "exact"
PROBABILISTIC = "probabilistic"

# Groebner bases are doubly exponential in the worst case: refuse oversized
# inputs loudly unless the caller overrides.
DEFAULT_MAX_VARIABLES = 8
DEFAULT_MAX_GENERATORS = 12

DEFAULT_ENUMERATION_BUDGET = 2_000_000


@dataclass(frozen=True)
class CodimResult:
    """Codimension verdict with its provenance and confidence."""

    codimension: int
    method: str  # "exact-groebner" | "probabilistic-slicing"
    confidence: Fraction
    note: str = ""

    def to_json(self) -> dict:
        data = {
            "codim": self.codimension,
            "method": self.method,
            "confidence": format_rational(self.confidence),
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class RegularSequenceResult:
    """Outcome of a prefix-by-prefix regularity decision."""

    is_regular: bool
    trace: Tuple[int, ...]
    failing_prefix: Optional[int] = None
    note: str = ""

    def to_json(self) -> dict:
        data = {"regular": self.is_regular, "trace": list(self.trace)}
        if self.failing_prefix is not None:
            data["failing_prefix"] = self.failing_prefix
        if self.note:
            data["note"] = self.note
        return data


def _validate_homogeneous(generators: Sequence[MultiPoly], allow_zero: bool) -> None:
    for g in generators:
        if g.is_zero():
            if allow_zero:
                continue
            raise InputError("zero polynomial among the generators")
        if not g.is_homogeneous() or g.total_degree() < 1:
            raise InputError(
                f"generators must be homogeneous of positive degree, got {g}"
            )


def _common_ring(generators: Sequence[MultiPoly]) -> Tuple[FieldSpec, Tuple[str, ...]]:
    first = generators[0]
    for g in generators:
        if g.field != first.field or g.variables != first.variables:
            raise InputError("generators live in different rings")
    return first.field, first.variables


def _check_budget(
    n_vars: int, n_gens: int, max_variables: int, max_generators: int
) -> None:
    if n_vars > max_variables:
        raise ResourceBudgetError(
            f"{n_vars} variables exceed the exact-kernel budget of {max_variables}"
            " (pass a larger max_variables to override)"
        )
    if n_gens > max_generators:
        raise ResourceBudgetError(
            f"{n_gens} generators exceed the exact-kernel budget of {max_generators}"
            " (pass a larger max_generators to override)"
        )


def cone_dimension(basis: GroebnerBasis) -> int:
    return staircase_dimension(basis.leading_exponents(), len(basis.variables))


def projective_codim(
    generators: Sequence[MultiPoly],
    mode: str = EXACT,
    *,
    order: TermOrder | None = None,
    trials: int = 5,
    seed: int = 0,
    max_variables: int = DEFAULT_MAX_VARIABLES,
    max_generators: int = DEFAULT_MAX_GENERATORS,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
    extension_degree: int = 2,
) -> CodimResult:
    """Codimension of the projective locus cut out by homogeneous forms.

    The empty generator list yields codimension 0 (the whole space).  Zero
    polynomials are dropped (they cut nothing); a nonempty all-zero list is
    rejected.  When the cone is the origin alone, the projective locus is
    empty and the codimension equals the number of variables.
    """
    if mode not in (EXACT, PROBABILISTIC):
        raise InputError(f"unknown codimension mode: {mode!r}")
    generators = list(generators)
    if not generators:
        return CodimResult(0, "exact-groebner", Fraction(1), "empty generator list")
    fieldspec, variables = _common_ring(generators)
    nonzero = [g for g in generators if not g.is_zero()]
    if not nonzero:
        raise InputError("all generators are zero")
    _validate_homogeneous(nonzero, allow_zero=False)

    if mode == PROBABILISTIC:
        if not fieldspec.is_prime_field:
            raise UnsupportedModeError(
                "probabilistic codimension requires a prime field"
            )
        return codim_probabilistic(
            nonzero,
            trials=trials,
            seed=seed,
            enumeration_budget=enumeration_budget,
            extension_degree=extension_degree,
        )

    _check_budget(len(variables), len(nonzero), max_variables, max_generators)
    basis = groebner_basis(nonzero, order)
    dim = cone_dimension(basis)
    codim = len(variables) - dim
    note = "empty projective locus" if dim == 0 else ""
    return CodimResult(codim, "exact-groebner", Fraction(1), note)


def is_regular_sequence(
    generators: Sequence[MultiPoly],
    *,
    kernel: str = EXACT,
    order: TermOrder | None = None,
    trials: int = 5,
    seed: int = 0,
    max_variables: int = DEFAULT_MAX_VARIABLES,
    max_generators: int = DEFAULT_MAX_GENERATORS,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> RegularSequenceResult:
    """Decide whether an ordered list of homogeneous forms is regular at 0.

    The trace records the cone codimension of every prefix up to the first
    failure; the sequence is regular iff prefix j has codimension exactly j
    for every j.  A zero polynomial fails at its own prefix (it cannot cut
    the codimension), and any sequence longer than the number of variables
    fails no later than prefix n+1.
    """
    if kernel not in (EXACT, PROBABILISTIC):
        raise InputError(f"unknown kernel: {kernel!r}")
    generators = list(generators)
    if not generators:
        return RegularSequenceResult(True, ())
    fieldspec, variables = _common_ring(generators)
    _validate_homogeneous(generators, allow_zero=True)
    n = len(variables)
    if kernel == EXACT:
        _check_budget(n, min(len(generators), n + 1), max_variables, max_generators)

    trace: List[int] = []
    basis: GroebnerBasis | None = None
    current: List[MultiPoly] = []
    codim = 0
    for j, g in enumerate(generators, start=1):
        if j > n:
            # codimension is capped at n < j, so the prefix cannot be regular
            trace.append(codim)
            return RegularSequenceResult(
                False, tuple(trace), j, f"sequence longer than the {n} variables"
            )
        if g.is_zero():
            trace.append(codim)
            return RegularSequenceResult(
                False, tuple(trace), j, f"zero polynomial at position {j}"
            )
        current.append(g)
        if kernel == EXACT:
            seeded = list(basis.generators) + [g] if basis is not None else [g]
            basis = groebner_basis(seeded, order)
            codim = n - cone_dimension(basis)
        else:
            codim = codim_probabilistic(
                current,
                trials=trials,
                seed=seed + j,
                enumeration_budget=enumeration_budget,
            ).codimension
        trace.append(codim)
        if codim != j:
            return RegularSequenceResult(False, tuple(trace), j)
    return RegularSequenceResult(True, tuple(trace))


# ---------------------------------------------------------------------------
# Probabilistic oracle: random slicing plus point enumeration over GF(p^e).
# ---------------------------------------------------------------------------


class _ExtField:
    """GF(p^e) for e in {1, 2}, with elements as tuples of residues.

    For odd p the quadratic extension is GF(p)[t]/(t^2 - r) with r the
    smallest non-residue; for p = 2 it is GF(2)[t]/(t^2 + t + 1).
    """

    def __init__(self, p: int, degree: int):
        if degree not in (1, 2):
            raise InputError("only extension degrees 1 and 2 are supported")
        self.p = p
        self.degree = degree
        self.size = p**degree
        if degree == 2 and p > 2:
            self.nonresidue = next(
                r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1
            )
        else:
            self.nonresidue = 0

    def embed(self, a: int) -> Tuple[int, ...]:
        return (a % self.p,) if self.degree == 1 else (a % self.p, 0)

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.degree

    def one(self) -> Tuple[int, ...]:
        return self.embed(1)

    def elements(self):
        if self.degree == 1:
            return [(a,) for a in range(self.p)]
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def add(self, x, y):
        if self.degree == 1:
            return ((x[0] + y[0]) % self.p,)
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def sub(self, x, y):
        if self.degree == 1:
            return ((x[0] - y[0]) % self.p,)
        return ((x[0] - y[0]) % self.p, (x[1] - y[1]) % self.p)

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return ((x[0] * y[0]) % p,)
        a, b = x
        c, d = y
        if p == 2:
            # t^2 = t + 1
            bd = b * d
            return ((a * c + bd) % 2, (a * d + b * c + bd) % 2)
        return ((a * c + self.nonresidue * b * d) % p, (a * d + b * c) % p)

    def inv(self, x):
        p = self.p
        if self.degree == 1:
            if x[0] % p == 0:
                raise ZeroDivisionError("inverse of zero")
            return (pow(x[0], p - 2, p),)
        a, b = x
        if a % p == 0 and b % p == 0:
            raise ZeroDivisionError("inverse of zero")
        if p == 2:
            one = self.one()
            return next(y for y in self.elements() if self.mul(x, y) == one)
        # (a + bt)^-1 = (a - bt) / (a^2 - r b^2) for t^2 = r
        norm = (a * a - self.nonresidue * b * b) % p
        norm_inv = pow(norm, p - 2, p)
        return ((a * norm_inv) % p, (-b * norm_inv) % p)

    def power(self, x, e: int):
        result = self.embed(1)
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def random_element(self, rng: Random):
        if self.degree == 1:
            return (rng.randrange(self.p),)
        return (rng.randrange(self.p), rng.randrange(self.p))


def _poly_vanishes_on_subspace(
    polys: Sequence[MultiPoly],
    kernel_basis: Sequence[Sequence[Tuple[int, ...]]],
    ext: _ExtField,
    budget: int,
) -> bool:
    """True iff the given forms have a common zero, other than the origin,
    on the subspace of GF(p^e)^n spanned by ``kernel_basis`` (vectors with
    GF(p^e) entries).  Scans projective representatives only."""
    m = len(kernel_basis)
    if m == 0:
        return False
    n = len(kernel_basis[0])
    count = (ext.size**m - 1) // (ext.size - 1)
    if count > budget:
        raise ResourceBudgetError(
            f"enumeration of {count} projective points exceeds the budget {budget}"
        )
    elements = ext.elements()
    zero = ext.zero()
    term_data = [
        [(ext.embed(c), exps) for exps, c in poly.terms.items()] for poly in polys
    ]

    def point_is_common_zero(coords: Tuple[Tuple[int, ...], ...]) -> bool:
        ambient = [zero] * n
        for coord, basis_vec in zip(coords, kernel_basis):
            if coord == zero:
                continue
            for i, entry in enumerate(basis_vec):
                if entry != zero:
                    ambient[i] = ext.add(ambient[i], ext.mul(entry, coord))
        for terms in term_data:
            total = zero
            for coeff, exps in terms:
                value = coeff
                for x, e in zip(ambient, exps):
                    if e:
                        value = ext.mul(value, ext.power(x, e))
                total = ext.add(total, value)
            if total != zero:
                return False
        return True

    one = ext.one()

    def scan(prefix: List[Tuple[int, ...]], position: int) -> bool:
        if position == m:
            return point_is_common_zero(tuple(prefix))
        for value in elements:
            prefix.append(value)
            if scan(prefix, position + 1):
                return True
            prefix.pop()
        return False

    for lead in range(m):
        # projective representative: zeros, then 1, then free coordinates
        prefix = [zero] * lead + [one]
        if scan(prefix, lead + 1):
            return True
    return False


def _random_full_rank_forms(
    rng: Random, ext: _ExtField, n: int, j: int, max_tries: int = 64
) -> List[List[Tuple[int, ...]]]:
    for _ in range(max_tries):
        rows = [[ext.random_element(rng) for _ in range(n)] for _ in range(j)]
        if len(_ext_rref(rows, ext)[1]) == j:
            return rows
    raise ResourceBudgetError(
        f"failed to draw {j} independent forms over GF({ext.size})"
    )


def _ext_rref(
    rows: List[List[Tuple[int, ...]]], ext: _ExtField
) -> Tuple[List[List[Tuple[int, ...]]], List[int]]:
    work = [row[:] for row in rows]
    zero = ext.zero()
    pivots: List[int] = []
    rank = 0
    n_cols = len(work[0]) if work else 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != zero), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = ext.inv(work[rank][col])
        work[rank] = [ext.mul(x, inv) for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != zero:
                factor = work[r][col]
                work[r] = [
                    ext.sub(a, ext.mul(factor, b))
                    for a, b in zip(work[r], work[rank])
                ]
        pivots.append(col)
        rank += 1
    return work, pivots


def _ext_nullspace(
    rows: List[List[Tuple[int, ...]]], ext: _ExtField, n: int
) -> List[List[Tuple[int, ...]]]:
    """Basis of the common kernel of GF(p^e) linear forms (row vectors)."""
    work, pivots = _ext_rref(rows, ext)
    zero = ext.zero()
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * n
        vec[f] = ext.one()
        for r, c in enumerate(pivots):
            vec[c] = ext.sub(zero, work[r][f])
        basis.append(vec)
    return basis


def codim_probabilistic(
    generators: Sequence[MultiPoly],
    trials: int = 5,
    seed: int = 0,
    *,
    extension_degree: int = 2,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> CodimResult:
    """Estimate the cone codimension by random linear slicing over GF(p^e).

    All randomness lives in the field GF(p^e) with e = ``extension_degree``:
    the j slicing forms are drawn with GF(p^e) coefficients and the sliced
    subspace is scanned for GF(p^e)-points beyond the origin (for e = 2 that
    enumeration covers the GF(p)-points as well).  Slicing a cone of
    dimension d with j hyperplanes through the origin always leaves
    dimension >= d - j, so an empty slice at level j certifies d <= j up to
    enumeration blindness, while a non-generic slice merely keeps extra
    points; the estimate is the smallest j at which one of up to ``trials``
    attempts yields emptiness, giving codimension n - j.  Enlarging the
    field tightens both failure modes: conjugate points become visible and
    non-generic slices become rarer.  The reported confidence 1 - 2^-trials
    is a fixed heuristic order of magnitude, which is all the
    cross-validation needs.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        return CodimResult(
            0, "probabilistic-slicing", Fraction(1) - Fraction(1, 2**trials),
            "empty generator list",
        )
    fieldspec, variables = _common_ring(generators)
    if not fieldspec.is_prime_field:
        raise UnsupportedModeError("probabilistic codimension requires a prime field")
    _validate_homogeneous(generators, allow_zero=False)
    if extension_degree not in (1, 2):
        raise InputError("extension_degree must be 1 or 2")
    p = fieldspec.characteristic
    n = len(variables)
    rng = Random(seed)
    ext = _ExtField(p, extension_degree)
    identity = [
        [ext.one() if c == r else ext.zero() for c in range(n)] for r in range(n)
    ]

    for j in range(n + 1):
        # slicing with 0 forms is deterministic, so one attempt suffices
        attempts = 1 if j == 0 else trials
        found_empty = False
        for _ in range(attempts):
            if j == 0:
                kernel = identity
            else:
                forms = _random_full_rank_forms(rng, ext, n, j)
                kernel = _ext_nullspace(forms, ext, n)
            if not _poly_vanishes_on_subspace(
                generators, kernel, ext, enumeration_budget
            ):
                found_empty = True
                break
        if found_empty:
            estimate = n - j
            note = ""
            if estimate > len(generators):
                # Krull bound: codim cannot exceed the number of forms, so the
                # enumeration must have missed points; clamp and say so.
                note = (
                    f"estimate {estimate} clamped to the generator count"
                    " (enumeration found no points beyond the origin)"
                )
                estimate = len(generators)
            return CodimResult(
                estimate,
                "probabilistic-slicing",
                Fraction(1) - Fraction(1, 2**trials),
                note,
            )
    raise AssertionError("unreachable: slicing with n forms leaves only the origin")
