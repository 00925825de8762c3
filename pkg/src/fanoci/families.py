"""Degree tuples of Fano complete intersections and their classification.

A family is indexed by a nondecreasing tuple (d_1, ..., d_k) with k >= 2
and d_1 >= 2; the variety dimension is M = sum(d_i) - k and the ambient
projective dimension is M + k = sum(d_i) (index 1).

Four classification criteria are evaluated, identified throughout as
t3/t4/t5/t6.  Writing dk = d_k and dk1 = d_{k-1}:

    t3: M >= 4k+1 and dk >= 8                  -> ct = 1
    t5: M >= 3k+4 and dk >= 8                  -> ct = 1
    t4: M >= 4k+1 and one of the cases below   -> ct > M/(M+1)
    t6: M >= 3k+4 and one of the cases below   -> ct > M/(M+1)

    case i:   dk = dk1 = 7 and M <= 47
    case ii:  dk = 7, dk1 <= 6 and M <= 19
    case iii: k = 2, d = (6, 6), M = 10

The conclusions hold for generic members of the family (carried as a fixed
caveat on every certificate): ct = 1 yields a Kaehler-Einstein metric and
direct-factor eligibility; ct > M/(M+1) yields the metric only.

The M-caps in cases (i) and (ii) are where the hypertangent ratio
    max(1, 3/4 * dk/(dk-1) * d+/(d+-1)),
with d+ = dk if dk1 = dk and d+ = dk - 1 otherwise, stays below (M+1)/M;
``max_M_for_bound`` rederives them exactly.

Notes:
  * t4/t6 carry three cases even though their source phrasing announces
    "two"; all three are evaluated.
  * k = 1 (hypersurfaces) is excluded everywhere: DegreeTuple requires
    k >= 2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InputError
from .rationals import format_rational

GENERICITY_CAVEAT = (
    "conclusions hold for generic members of the family"
    " (regularity in the sense of the genericity condition)"
)


@dataclass(frozen=True)
class DegreeTuple:
    """Nondecreasing degrees (d_1, ..., d_k), k >= 2, d_1 >= 2."""

    degrees: Tuple[int, ...]

    def __post_init__(self) -> None:
        d = self.degrees
        if len(d) < 2:
            raise InputError(f"need k >= 2 degrees, got {d}")
        if any(not isinstance(x, int) or x < 2 for x in d):
            raise InputError(f"degrees must be integers >= 2, got {d}")
        if any(d[i] > d[i + 1] for i in range(len(d) - 1)):
            raise InputError(f"degrees must be nondecreasing, got {d}")
        assert self.M == sum(d) - self.k and self.ambient == sum(d)

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def M(self) -> int:
        return sum(self.degrees) - len(self.degrees)

    @property
    def ambient(self) -> int:
        return sum(self.degrees)

    @property
    def d_plus(self) -> int:
        d = self.degrees
        return d[-1] if d[-2] == d[-1] else d[-1] - 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def __str__(self) -> str:
        return "(" + ",".join(str(d) for d in self.degrees) + ")"


def degree_tuple(values: Iterable[int]) -> DegreeTuple:
    """Build a DegreeTuple, sorting (with a notice) if given out of order."""
    values = list(values)
    ordered = sorted(values)
    if ordered != values:
        warnings.warn(
            f"degrees {values} were not nondecreasing; sorted to {ordered}",
            stacklevel=2,
        )
    return DegreeTuple(tuple(ordered))


def fano_dimension(degrees: DegreeTuple) -> int:
    """The variety dimension M = sum(d_i) - k."""
    return degrees.M


def d_plus(degrees: DegreeTuple) -> int:
    """d_k when the top two degrees agree, d_k - 1 otherwise."""
    return degrees.d_plus


def hypertangent_ratio(degrees: DegreeTuple) -> Fraction:
    """max(1, 3/4 * dk/(dk-1) * d+/(d+-1)), exactly."""
    dk = degrees.degrees[-1]
    dp = degrees.d_plus
    product = Fraction(3, 4) * Fraction(dk, dk - 1) * Fraction(dp, dp - 1)
    return max(Fraction(1), product)


def max_M_for_bound(ratio: Fraction) -> Optional[int]:
    """Largest M with ratio < (M+1)/M; None when every M qualifies.

    ratio < (M+1)/M  <=>  M < 1/(ratio - 1), so for ratio = 1 the bound is
    unbounded and otherwise the cap is the largest integer strictly below
    1/(ratio - 1).
    """
    ratio = Fraction(ratio)
    if ratio < 1:
        raise InputError(f"ratio must be >= 1, got {ratio}")
    if ratio == 1:
        return None
    c = 1 / (ratio - 1)
    return int(c) - 1 if c.denominator == 1 else int(c)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

CT_EQUALS_ONE = "eq1"
CT_EXCEEDS = "gt_M_over_M+1"
CT_NONE = "none"


@dataclass(frozen=True)
class FamilyCertificate:
    """Which criteria apply to a degree tuple and what follows from them."""

    degrees: DegreeTuple
    t3: bool
    t4_case: str  # "none" | "i" | "ii" | "iii"
    t5: bool
    t6_case: str
    ct_conclusion: str  # eq1 | gt_M_over_M+1 | none
    hypertangent_ratio: Fraction
    ke_metric: str  # yes | unknown
    direct_factor: str  # yes | unknown
    genericity_caveat: str = GENERICITY_CAVEAT

    def to_json(self) -> dict:
        return {
            "degrees": list(self.degrees.degrees),
            "k": self.degrees.k,
            "M": self.degrees.M,
            "ambient": self.degrees.ambient,
            "theorems": {
                "t3": self.t3,
                "t4": self.t4_case,
                "t5": self.t5,
                "t6": self.t6_case,
            },
            "ct": self.ct_conclusion,
            "hypertangent_ratio": format_rational(self.hypertangent_ratio),
            "ke_metric": self.ke_metric,
            "direct_factor": self.direct_factor,
        }

    CSV_HEADER = (
        "degrees,k,M,ambient,t3,t4,t5,t6,ct,hypertangent_ratio,"
        "ke_metric,direct_factor"
    )

    def to_csv_row(self) -> str:
        return ",".join(
            [
                '"' + " ".join(str(d) for d in self.degrees.degrees) + '"',
                str(self.degrees.k),
                str(self.degrees.M),
                str(self.degrees.ambient),
                str(self.t3).lower(),
                self.t4_case,
                str(self.t5).lower(),
                self.t6_case,
                self.ct_conclusion,
                format_rational(self.hypertangent_ratio),
                self.ke_metric,
                self.direct_factor,
            ]
        )


def _seven_six_case(degrees: DegreeTuple) -> str:
    d = degrees.degrees
    M = degrees.M
    if d[-1] == 7 and d[-2] == 7 and M <= 47:
        return "i"
    if d[-1] == 7 and d[-2] <= 6 and M <= 19:
        return "ii"
    if degrees.k == 2 and d == (6, 6) and M == 10:
        return "iii"
    return "none"


def theorem_applicability(degrees: DegreeTuple) -> FamilyCertificate:
    """Evaluate every criterion hypothesis exactly and fill the certificate."""
    d = degrees.degrees
    k, M = degrees.k, degrees.M
    high_degree = d[-1] >= 8
    t3 = M >= 4 * k + 1 and high_degree
    t5 = M >= 3 * k + 4 and high_degree
    case = _seven_six_case(degrees)
    t4_case = case if M >= 4 * k + 1 else "none"
    t6_case = case if M >= 3 * k + 4 else "none"
    if t5 or t3:
        ct = CT_EQUALS_ONE
    elif t6_case != "none" or t4_case != "none":
        ct = CT_EXCEEDS
    else:
        ct = CT_NONE
    return FamilyCertificate(
        degrees=degrees,
        t3=t3,
        t4_case=t4_case,
        t5=t5,
        t6_case=t6_case,
        ct_conclusion=ct,
        hypertangent_ratio=hypertangent_ratio(degrees),
        ke_metric="yes" if ct != CT_NONE else "unknown",
        direct_factor="yes" if ct == CT_EQUALS_ONE else "unknown",
    )


def theorem_applies(certificate: FamilyCertificate, theorem_id: str) -> bool:
    """Evaluate ids like "t3", "t4", "t6:ii" against a certificate."""
    name, _, case = theorem_id.partition(":")
    if name == "t3":
        value: bool | str = certificate.t3
    elif name == "t4":
        value = certificate.t4_case
    elif name == "t5":
        value = certificate.t5
    elif name == "t6":
        value = certificate.t6_case
    else:
        raise InputError(f"unknown theorem id: {theorem_id!r}")
    if isinstance(value, bool):
        if case:
            raise InputError(f"{name} has no cases ({theorem_id!r})")
        return value
    if case:
        if case not in ("i", "ii", "iii"):
            raise InputError(f"unknown case in {theorem_id!r}")
        return value == case
    return value != "none"


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def nondecreasing_degree_tuples(
    k: int, total: int, d_min: int = 2, d_max: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """All nondecreasing k-tuples with entries in [d_min, d_max] summing to total."""
    if d_max is None:
        d_max = total
    if k == 0:
        if total == 0:
            yield ()
        return
    # remaining parts are >= first, so first <= total // k
    for first in range(d_min, min(d_max, total // k) + 1):
        for rest in nondecreasing_degree_tuples(k - 1, total - first, first, d_max):
            yield (first,) + rest


def count_nondecreasing_tuples(k: int, total: int, d_min: int = 2) -> int:
    """Independent partition-count oracle (dynamic programming, no listing)."""
    # partitions of `total` into exactly k parts, each >= d_min, equals
    # partitions of total - k*(d_min-1) into exactly k parts >= 1
    shifted = total - k * (d_min - 1)
    if shifted < k:
        return 0
    # p(n, k): partitions of n into exactly k parts
    table = [[0] * (k + 1) for _ in range(shifted + 1)]
    table[0][0] = 1
    for n in range(1, shifted + 1):
        for parts in range(1, k + 1):
            table[n][parts] = table[n - 1][parts - 1]
            if n - parts >= 0:
                table[n][parts] += table[n - parts][parts]
    return table[shifted][k]


FilterPredicate = Callable[[FamilyCertificate], bool]


def parse_family_filter(spec: Optional[str]) -> Optional[FilterPredicate]:
    """Parse a filter token into a predicate on certificates.

    Tokens: "none", a theorem id ("t3", "t6:ii", ...), "ke", or
    "STRONG-not-WEAK" for theorem ids STRONG/WEAK.  The token "t6-not-t4"
    is the catalogued novelty filter: it compares case (ii) of t6 against
    t4, which is the comparison whose result is a fixed finite list; the
    unrestricted comparison is available as "t6:any-not-t4".
    """
    if spec is None or spec == "none":
        return None
    if spec == "ke":
        return lambda cert: cert.ke_metric == "yes"
    if spec == "t6-not-t4":
        return lambda cert: theorem_applies(cert, "t6:ii") and not theorem_applies(
            cert, "t4"
        )
    if "-not-" in spec:
        strong, weak = spec.split("-not-", 1)
        strong = "t6" if strong == "t6:any" else strong
        return lambda cert: theorem_applies(cert, strong) and not theorem_applies(
            cert, weak
        )
    return lambda cert: theorem_applies(cert, spec)


def enumerate_families(
    *,
    ambient: Optional[int] = None,
    ambient_max: Optional[int] = None,
    k: Optional[int] = None,
    k_min: int = 2,
    k_max: Optional[int] = None,
    d_max: Optional[int] = None,
    filter_spec: Optional[str] = None,
    predicate: Optional[FilterPredicate] = None,
) -> List[DegreeTuple]:
    """All degree tuples in a finite box, lexicographically sorted.

    The box must be finite: either an ambient value/cap, or a bounded k
    range together with a degree cap.  ``filter_spec`` (a token from
    ``parse_family_filter``) or an explicit ``predicate`` restricts the
    output by certificate properties.
    """
    if predicate is None:
        predicate = parse_family_filter(filter_spec)
    if ambient is not None and ambient_max is not None:
        raise InputError("give either ambient or ambient_max, not both")
    if ambient is not None:
        ambients: Sequence[int] = [ambient]
    elif ambient_max is not None:
        ambients = range(4, ambient_max + 1)
    elif k_max is not None and d_max is not None:
        ambients = range(4, k_max * d_max + 1)
    else:
        raise InputError(
            "unbounded search box: give ambient, ambient_max, or k_max with d_max"
        )

    results: List[DegreeTuple] = []
    for total in ambients:
        lo = k if k is not None else k_min
        hi = k if k is not None else min(k_max or total // 2, total // 2)
        for parts in range(lo, hi + 1):
            cap = d_max if d_max is not None else total
            for degrees in nondecreasing_degree_tuples(parts, total, 2, cap):
                tup = DegreeTuple(degrees)
                if predicate is None or predicate(theorem_applicability(tup)):
                    results.append(tup)
    results.sort(key=lambda t: t.degrees)
    return results


def new_families_vs(
    strong: str,
    weak: str,
    **box,
) -> List[DegreeTuple]:
    """Tuples in the box where ``strong`` applies and ``weak`` does not.

    Theorem ids may carry case qualifiers ("t6:ii").  Note that the
    unqualified comparison ("t6" vs "t4") is the literal one: every tuple
    where t6 applies through any case and t4 through none.
    """

    def predicate(cert: FamilyCertificate) -> bool:
        return theorem_applies(cert, strong) and not theorem_applies(cert, weak)

    return enumerate_families(predicate=predicate, **box)


def remark_families() -> List[DegreeTuple]:
    """The catalogued novelty list: case-(ii) t6 families outside t4.

    These all live in ambient projective dimension 24; the computation
    re-derives the fixed list instead of hard-coding it.
    """
    return new_families_vs("t6:ii", "t4", ambient=24)
