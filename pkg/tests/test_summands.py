"""Summand decompositions, Boolean correspondence, projectability."""

import pytest

from pmvlab import corpus
from pmvlab.errors import NotStronglyProjectable, NotSummand
from pmvlab.finite import FinitePMV
from pmvlab.ideals import polar
from pmvlab.ortho import orthocompletion
from pmvlab.summands import (
    classify_projectability,
    decompose,
    pseudocomplement,
    sum_boolean_iso,
    summand_ideals,
)


def test_p6_summands():
    m = corpus.load("p6")
    decs = summand_ideals(m)
    assert len(decs) == 4
    for d in decs:
        assert set(d.complement.members) == set(polar(m, d.ideal.members).members)
        assert m.oplus(d.witness, d.complement_witness) == m.one


def test_decompose_finite():
    m = corpus.load("p6")
    for d in summand_ideals(m):
        for x in m.elements():
            a, b = decompose(m, d.ideal, x)
            assert a in d.ideal and b in d.complement
            assert m.oplus(a, b) == x


def test_decompose_rejects_non_summand():
    m = corpus.load("c3")
    from pmvlab.ideals import FiniteIdeal

    with pytest.raises(NotSummand):
        decompose(m, FiniteIdeal.of(m, [0, 1]), 2)


def test_decompose_symbolic_example():
    lexp = corpus.load("lexp")
    o = orthocompletion(lexp).algebra
    dec = next(d for d in summand_ideals(o) if d.witness == ((1, 0), (0, 0)))
    a, b = decompose(o, dec.ideal, ((1, -1), (1, -2)))
    assert a == ((1, -1), (0, 0)) and b == ((0, 0), (1, -2))


def test_sum_boolean_iso_finite():
    for name in ("c2", "c3", "p6", "c2c2"):
        pairs = sum_boolean_iso(corpus.load(name))
        assert len(pairs) == len({frozenset(i.members) for _, i in pairs})
    assert len(sum_boolean_iso(corpus.load("p6"))) == 4


def test_sum_boolean_iso_symbolic():
    lexp = corpus.load("lexp")
    assert len(sum_boolean_iso(lexp)) == 2
    o = orthocompletion(lexp).algebra
    assert len(sum_boolean_iso(o)) == 4


def test_pseudocomplement_finite():
    m = corpus.load("p6")
    for a in m.elements():
        b = pseudocomplement(m, a)
        for x in m.elements():
            assert (m.meet(x, a) == m.zero) == m.leq(x, b)


def test_pseudocomplement_requires_strong_projectability():
    lexp = corpus.load("lexp")
    with pytest.raises(NotStronglyProjectable):
        pseudocomplement(lexp, ((0, 1), (0, 0)))
    # After orthocompletion the same element has one.
    o = orthocompletion(lexp).algebra
    assert pseudocomplement(o, ((0, 1), (0, 0))) == ((0, 0), (1, 0))


def test_projectability_classification():
    for name in ("c2", "c3", "p6", "c2c2"):
        res = classify_projectability(corpus.load(name))
        assert res.projectable and res.strongly_projectable
    lexp = corpus.load("lexp")
    res = classify_projectability(lexp)
    assert not res.projectable and not res.strongly_projectable
    assert res.witness is not None
    res = classify_projectability(orthocompletion(lexp).algebra)
    assert res.projectable and res.strongly_projectable
    # Chains are trivially strongly projectable.
    for name in ("gamma_z10", "gamma_q10", "nc4", "diag"):
        res = classify_projectability(corpus.load(name))
        assert res.strongly_projectable, name


def _subalgebras(m):
    from itertools import combinations

    out = []
    rest = [x for x in m.elements() if x not in (m.zero, m.one)]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            s = {m.zero, m.one, *extra}
            if all(
                m.oplus(a, b) in s and m.neg_minus(a) in s and m.neg_tilde(a) in s
                for a in s
                for b in s
            ):
                out.append(sorted(s))
    return out


def _restrict(m, members):
    index = {x: i for i, x in enumerate(members)}
    return FinitePMV(
        len(members),
        tuple(tuple(index[m.oplus(a, b)] for b in members) for a in members),
        tuple(index[m.neg_minus(a)] for a in members),
        tuple(index[m.neg_tilde(a)] for a in members),
        zero=index[m.zero],
        one=index[m.one],
    )


def test_subalgebra_intersections_strongly_projectable():
    # Intersections of (strongly projectable) subalgebras of a finite
    # algebra are strongly projectable again.
    from itertools import combinations

    for name in ("p6", "c2c2"):
        m = corpus.load(name)
        subs = _subalgebras(m)
        for s in subs:
            assert classify_projectability(_restrict(m, s)).strongly_projectable
        for s, t in combinations(subs, 2):
            inter = sorted(set(s) & set(t))
            assert inter in subs
            assert classify_projectability(_restrict(m, inter)).strongly_projectable
