"""Chains, presentations, and interval algebras over presented groups."""

import random
from fractions import Fraction as F

import pytest

from pmvlab.errors import (
    BadPartition,
    CapExceeded,
    NotInCarrier,
    UnitNotInG,
    UnitNotStrong,
)
from pmvlab.lgroup import (
    GammaAlgebra,
    NCMatrix,
    Q,
    SubdirectPresentation,
    ZLex,
    chain_add,
    chain_cmp,
    chain_neg,
    chain_scale,
    gamma_eval,
    make_finite_gamma,
    sample_chain,
    validate_presentation,
    vec_abs,
    xi_finite,
)


def test_zlex_order_is_lexicographic():
    k = ZLex(2)
    assert chain_cmp(k, (1, -5), (0, 100)) > 0
    assert chain_cmp(k, (1, 2), (1, 3)) < 0
    assert chain_add(k, (1, 2), (0, -3)) == (1, -1)
    assert chain_neg(k, (2, -3)) == (-2, 3)


def test_abs_example():
    # |(-2, 3)| in the depth-2 lex chain.
    assert vec_abs((ZLex(2),), ((-2, 3),)) == ((2, -3),)


def test_ncmatrix_group():
    k = NCMatrix()
    a, b = (F(2), F(1)), (F(3), F(-1))
    assert chain_add(k, a, b) == (F(6), F(-1))
    assert chain_add(k, b, a) == (F(6), F(2))  # noncommutative
    inv = chain_neg(k, a)
    assert chain_add(k, a, inv) == (F(1), F(0))
    assert chain_scale(k, 2, a) == (F(4), F(3))
    # Positivity: a > identity iff scale factor > 1, or == 1 with b >= 0.
    assert chain_cmp(k, (F(1), F(0)), (F(2), F(-100))) < 0
    assert chain_cmp(k, (F(1), F(1)), (F(1), F(0))) > 0


def test_ncmatrix_order_translation_invariant():
    # The positive cone must be normal for the order to be two-sided.
    k = NCMatrix()
    rng = random.Random(3)
    for _ in range(300):
        x, y, t = (sample_chain(k, rng) for _ in range(3))
        if chain_cmp(k, x, y) <= 0:
            assert chain_cmp(k, chain_add(k, t, x), chain_add(k, t, y)) <= 0
            assert chain_cmp(k, chain_add(k, x, t), chain_add(k, y, t)) <= 0


def lexp():
    return SubdirectPresentation(
        (ZLex(2), ZLex(2)), ((0, 1),), ((1, 0), (1, 0))
    )


def test_presentation_validation():
    with pytest.raises(BadPartition):
        SubdirectPresentation((ZLex(1), ZLex(1)), ((0,),), ((1,), (1,)))
    with pytest.raises(UnitNotInG):
        SubdirectPresentation((ZLex(1), ZLex(1)), ((0, 1),), ((1,), (2,)))
    with pytest.raises(UnitNotStrong):
        SubdirectPresentation((ZLex(2),), ((0,),), ((0, 5),))
    with pytest.raises(UnitNotStrong):
        SubdirectPresentation((Q(),), ((0,),), (F(0),))


def test_membership_and_closure():
    p = lexp()
    assert p.member(((2, -7), (2, 11)))
    assert not p.member(((1, 0), (2, 0)))
    report = validate_presentation(p, samples=500, seed=1)
    assert report.valid


def test_sampling_respects_linkage():
    p = lexp()
    rng = random.Random(0)
    for _ in range(200):
        x = p.sample(rng)
        assert x[0][0] == x[1][0]


def test_gamma_z10():
    p = SubdirectPresentation((ZLex(1),), ((0,),), ((10,),))
    ga = GammaAlgebra(p)
    assert ga.oplus(((7,),), ((5,),)) == ((10,),)
    assert ga.neg_minus(((3,),)) == ((7,),)
    assert ga.odot(((7,),), ((5,),)) == ((2,),)


def test_gamma_lexp_negations():
    ga = GammaAlgebra(lexp())
    x = ((1, -2), (1, -3))
    assert ga.neg_minus(x) == ((0, 2), (0, 3))
    assert ga.neg_tilde(x) == ((0, 2), (0, 3))
    assert not ga.contains(((1, 1), (1, 0)))  # above the unit
    with pytest.raises(NotInCarrier):
        ga.check_element(((1, 0), (0, 0)))  # linkage broken


def test_gamma_nc_negations():
    p = SubdirectPresentation((NCMatrix(),), ((0,),), (((F(4), F(0))),))
    ga = GammaAlgebra(p)
    x = ((F(2), F(1)),)
    assert ga.neg_minus(x) == ((F(2), F(-2)),)
    assert ga.neg_tilde(x) == ((F(2), F(-1, 2)),)
    # Involutions recover x.
    assert ga.neg_tilde(ga.neg_minus(x)) == x
    assert ga.neg_minus(ga.neg_tilde(x)) == x


def test_gamma_eval_checks_carrier():
    ga = GammaAlgebra(lexp())
    assert gamma_eval(ga, "join", ((0, 1), (0, 1)), ((0, 2), (0, 0))) == ((0, 2), (0, 1))
    with pytest.raises(NotInCarrier):
        gamma_eval(ga, "oplus", ((5, 0), (5, 0)), ((0, 0), (0, 0)))


def test_boolean_elements_per_class():
    ga = GammaAlgebra(lexp())
    assert sorted(ga.boolean_elements()) == [((0, 0), (0, 0)), ((1, 0), (1, 0))]
    unlinked = SubdirectPresentation((ZLex(2), ZLex(2)), ((0,), (1,)), ((1, 0), (1, 0)))
    assert len(GammaAlgebra(unlinked).boolean_elements()) == 4


def test_make_finite_gamma_enumeration():
    m = make_finite_gamma((1, 2))
    assert m.size == 6
    assert m.label(0) == (0, 0) and m.label(m.one) == (1, 2)
    with pytest.raises(CapExceeded):
        make_finite_gamma((100, 100), cap=64)


def test_xi_finite_recovers_units():
    units, mapping = xi_finite(make_finite_gamma((1, 2)))
    assert units == [1, 2]
    units, _ = xi_finite(make_finite_gamma((2,)))
    assert units == [2]
    units, _ = xi_finite(make_finite_gamma((1, 1)))
    assert units == [1, 1]
