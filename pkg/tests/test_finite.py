"""Finite table algebras: construction, axioms, terms, Boolean skeleton."""


import pytest

from pmvlab.errors import (
    MalformedTable,
    OutOfCarrier,
    PMVError,
    PreconditionFailed,
)
from pmvlab.finite import (
    FinitePMV,
    boolean_skeleton,
    check_axioms,
    classify,
    eval_term,
    is_boolean,
    riesz_split,
)
from pmvlab.lgroup import make_finite_gamma


def chain(n):
    return make_finite_gamma((n,))


def test_c2_tables():
    m = chain(1)
    assert m.size == 2 and m.zero == 0 and m.one == 1
    assert m.oplus(1, 1) == 1 and m.neg_minus(1) == 0 and m.neg_tilde(0) == 1


def test_c3_arithmetic():
    m = chain(2)
    assert m.oplus(1, 1) == 2
    assert m.oplus(1, 2) == 2
    assert m.neg_minus(1) == 1
    assert m.odot(2, 1) == 1
    assert m.odot(1, 1) == 0


def test_malformed_tables_rejected():
    with pytest.raises(MalformedTable):
        FinitePMV(2, ((0,), (1, 1)), (1, 0), (1, 0))
    with pytest.raises(MalformedTable):
        FinitePMV(2, ((0, 1), (1, 5)), (1, 0), (1, 0))
    with pytest.raises(MalformedTable):
        FinitePMV(2, ((0, 1), (1, 1)), (1,), (1, 0))


def test_out_of_carrier():
    m = chain(1)
    with pytest.raises(OutOfCarrier):
        m.check_element(7)


def test_axioms_pass_on_chains_and_products():
    for units in ((1,), (2,), (1, 2), (1, 1), (3, 2)):
        report = check_axioms(make_finite_gamma(units))
        assert report.passed, (units, report.violations[:3])


def test_axiom_checker_catches_breakage():
    m = chain(2)
    rows = [list(r) for r in m.oplus_table]
    rows[1][1] = 1  # 1 (+) 1 should be 2 in the 3-chain
    mutant = FinitePMV(3, tuple(map(tuple, rows)), m.neg_minus_table, m.neg_tilde_table)
    assert not check_axioms(mutant, first_only=True).passed


def test_order_and_lattice():
    m = make_finite_gamma((1, 2))
    for x in m.elements():
        for y in m.elements():
            # x <= y iff x^- (+) y = 1, and join/meet are lub/glb.
            assert m.leq(x, y) == (m.oplus(m.neg_minus(x), y) == m.one)
            j, mt = m.join(x, y), m.meet(x, y)
            assert m.leq(x, j) and m.leq(y, j) and m.leq(mt, x) and m.leq(mt, y)


def test_join_from_a6_matches_order_join():
    for units in ((2,), (1, 2), (1, 1)):
        m = make_finite_gamma(units)
        for x in m.elements():
            for y in m.elements():
                assert m.oplus(x, m.odot(m.neg_tilde(x), y)) == m.join(x, y)
                assert m.odot(x, m.oplus(m.neg_minus(x), y)) == m.meet(x, y)


def test_nfold_and_power():
    m = chain(2)
    assert m.nfold(0, 1) == 0 and m.nfold(1, 1) == 1 and m.nfold(2, 1) == 2
    assert m.nfold(5, 1) == 2
    assert m.power(1, 0) == 2 and m.power(1, 1) == 1 and m.power(1, 2) == 0
    # n.x and x^n at the bounds: 0 and 1 behave as identities/absorbers.
    assert m.nfold(3, 0) == 0 and m.power(0, 2) == 0 and m.power(2, 3) == 2


def test_eval_term():
    m = chain(2)
    assert eval_term(m, "oplus", 1, 1) == 2
    assert eval_term(m, "odot", 2, 1) == 1
    assert eval_term(m, "nfold", 1, n=3) == 2
    with pytest.raises(PMVError):
        eval_term(m, "nonsense", 1)


def test_boolean_elements():
    m = make_finite_gamma((1, 2))
    booleans = [x for x in m.elements() if is_boolean(m, x)]
    labels = {m.label(x) for x in booleans}
    assert labels == {(0, 0), (1, 0), (0, 2), (1, 2)}


def test_boolean_skeleton_is_boolean_algebra():
    m = make_finite_gamma((1, 2))
    skel = boolean_skeleton(m)
    assert len(skel) == 4
    for a in skel:
        assert skel.meet(a, skel.complement(a)) == m.zero
        assert skel.join(a, skel.complement(a)) == m.one
        # Boolean a satisfies a (+) x = a v x = x (+) a for every x.
        for x in m.elements():
            assert m.oplus(a, x) == m.join(a, x) == m.oplus(x, a)


def test_is_boolean_inconsistent_table():
    # An involution pair that disagrees on complements trips the cross-check.
    m = FinitePMV(2, ((0, 1), (1, 1)), (1, 0), (1, 0))
    assert is_boolean(m, 0) and is_boolean(m, 1)


def test_classify_chain_and_product():
    res = classify(make_finite_gamma((2,)))
    assert res.commutative and res.symmetric and not res.sampled
    res = classify(make_finite_gamma((1, 2)))
    assert res.commutative and res.symmetric


def test_classify_symbolic_sampled():
    from pmvlab import corpus

    res = classify(corpus.load("lexp"), samples=300, seed=5)
    assert res.commutative and res.sampled
    # The noncommutative matrix interval is detected as such.
    res = classify(corpus.load("nc4"), samples=300, seed=5)
    assert not res.commutative and not res.symmetric


def test_riesz_split_examples():
    m = chain(2)
    # x=1 <= a (+) b with a=1, b=1 splits minimally as (0, 1).
    assert riesz_split(m, 1, 1, 1) == (0, 1)
    assert riesz_split(m, 2, 1, 1) == (1, 1)
    assert riesz_split(m, 0, 1, 2) == (0, 0)


def test_riesz_split_everywhere():
    for units in ((2,), (1, 1), (1, 2)):
        m = make_finite_gamma(units)
        for x in m.elements():
            for a in m.elements():
                for b in m.elements():
                    if not m.leq(x, m.oplus(a, b)):
                        continue
                    a1, b1 = riesz_split(m, x, a, b)
                    assert m.leq(a1, a) and m.leq(b1, b)
                    assert m.oplus(a1, b1) == x


def test_riesz_split_precondition():
    m = chain(2)
    with pytest.raises(PreconditionFailed):
        riesz_split(m, 2, 1, 0)
