import pytest

from fanoci.errors import InputError, ResourceBudgetError
from fanoci.fields import FieldSpec
from fanoci.groebner import (
    TermOrder,
    groebner_basis,
    leading_term,
    normal_form,
    s_polynomial,
    staircase_dimension,
)
from fanoci.polynomials import MultiPoly, random_poly

Q = FieldSpec.rationals()
F5 = FieldSpec.prime(5)


def qv(names):
    return tuple(MultiPoly.variable(Q, names, n) for n in names)


def test_monomial_generators_are_self_reduced():
    x, y = qv(("x", "y"))
    basis = groebner_basis([x, y])
    assert [g.terms for g in basis.generators] == [x.terms, y.terms]


def test_single_generator_made_monic():
    x, y = qv(("x", "y"))
    basis = groebner_basis([3 * x**2 + 6 * y])
    (g,) = basis.generators
    assert g.terms == (x**2 + 2 * y).terms


def test_lex_example_yields_reduced_basis():
    # ideal (y - x^2, xy) under lex with y > x: Buchberger adds the S-poly
    # remainder x^3, after which xy = x*(y - x^2) + x^3 is redundant, so the
    # unique REDUCED basis is {y - x^2, x^3}
    x, y = qv(("x", "y"))
    order = TermOrder("lex", ("y", "x"))
    basis = groebner_basis([y - x**2, x * y], order)
    assert sorted(str(g) for g in basis.generators) == sorted(
        [str(y - x**2), str(x**3)]
    )
    # the dropped generator still reduces to zero: it is in the ideal
    assert basis.contains(x * y)


def test_zero_ideal_yields_empty_basis():
    zero = MultiPoly.zero(Q, ("x", "y"))
    basis = groebner_basis([zero])
    assert basis.generators == ()


def test_basis_is_reduced_and_monic_on_random_inputs():
    for seed in range(15):
        gens = [
            random_poly(2, ("x", "y", "z"), F5, homogeneous=False, seed=seed * 3 + i)
            for i in range(3)
        ]
        basis = groebner_basis(gens)
        resolved = basis.order.resolve(basis.variables)
        lts = [leading_term(g, resolved) for g in basis.generators]
        for i, (lt_exps, lt_coeff) in enumerate(lts):
            assert lt_coeff == 1
            for j, g in enumerate(basis.generators):
                if i == j:
                    continue
                # no leading term divides any term of another generator
                for exps in g.terms:
                    assert not all(a <= b for a, b in zip(lt_exps, exps))


def test_every_s_polynomial_reduces_to_zero():
    for seed in range(10):
        gens = [
            random_poly(2, ("x", "y", "z"), F5, homogeneous=True, seed=seed * 7 + i)
            for i in range(2)
        ]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        basis = groebner_basis(gens)
        resolved = basis.order.resolve(basis.variables)
        for i in range(len(basis.generators)):
            for j in range(i):
                s = s_polynomial(basis.generators[i], basis.generators[j], resolved)
                assert normal_form(s, list(basis.generators), resolved).is_zero()


def test_input_generators_reduce_to_zero():
    for seed in range(10):
        gens = [
            random_poly(3, ("x", "y"), F5, homogeneous=False, seed=seed * 11 + i)
            for i in range(3)
        ]
        nonzero = [g for g in gens if not g.is_zero()]
        if not nonzero:
            continue
        basis = groebner_basis(nonzero)
        for g in nonzero:
            assert basis.contains(g)


def test_mixed_rings_rejected():
    x, _ = qv(("x", "y"))
    other = MultiPoly.variable(Q, ("a", "b"), "a")
    with pytest.raises(InputError):
        groebner_basis([x, other])


def test_groebner_pair_budget():
    # katsura-like dense quadrics exceed a tiny pair budget immediately
    gens = [
        random_poly(2, ("x", "y", "z", "w"), F5, homogeneous=False, seed=i)
        for i in range(4)
    ]
    with pytest.raises(ResourceBudgetError):
        groebner_basis(gens, max_pairs=1)


def test_staircase_dimension_rules():
    # zero ideal: the whole space
    assert staircase_dimension([], 4) == 4
    # coordinate subspace: LT = x in k[x,y,z] leaves {y, z}
    assert staircase_dimension([(1, 0, 0)], 3) == 2
    # artinian staircase: all variables blocked
    assert staircase_dimension([(2, 0), (0, 3)], 2) == 0
    # the (x^2+y^2, xy, y^3) staircase over 3 variables keeps only {z}
    assert staircase_dimension([(2, 0, 0), (1, 1, 0), (0, 3, 0)], 3) == 1
    with pytest.raises(InputError):
        staircase_dimension([(0, 0)], 2)  # unit leading term


def test_lex_vs_grevlex_leading_terms():
    x, y = qv(("x", "y"))
    f = y**3 + x**2  # grevlex: y^3 bigger (degree); lex x > y: x^2 bigger
    grev = TermOrder("grevlex").resolve(("x", "y"))
    lex = TermOrder("lex", ("x", "y")).resolve(("x", "y"))
    assert leading_term(f, grev)[0] == (0, 3)
    assert leading_term(f, lex)[0] == (2, 0)


def test_order_variable_mismatch_rejected():
    x, _ = qv(("x", "y"))
    with pytest.raises(InputError):
        groebner_basis([x], TermOrder("lex", ("a", "b")))
