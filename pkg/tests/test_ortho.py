"""Supports, orthocompletion, largeness, lubs, polar correspondence."""

import pytest

from pmvlab import corpus
from pmvlab.errors import NotInG, NotLarge, PreconditionFailed
from pmvlab.finite import boolean_skeleton
from pmvlab.lgroup import GammaAlgebra, SubdirectPresentation, ZLex
from pmvlab.ortho import (
    is_large,
    is_orthocomplete,
    lub_preservation_check,
    minimal_projectable_extension,
    orthocomplete_group,
    orthocompletion,
    polar_correspondence,
    strong_unit_check,
    support,
    support_lattice,
    support_witness,
)


def lexp_pres():
    return corpus.load("lexp").presentation


def test_support_examples():
    p = lexp_pres()
    assert support(p, ((0, 3), (0, 0))) == {0}
    assert support(p, ((1, -2), (1, 0))) == {0, 1}
    assert support(p, ((0, 0), (0, 0))) == frozenset()
    with pytest.raises(NotInG):
        support(p, ((1, 0), (0, 0)))


def test_support_lattice_lexp():
    lat = support_lattice(lexp_pres())
    assert len(lat.achievable) == 4  # both blocks depth 2: all subsets
    assert set(lat.atoms) == {frozenset({0}), frozenset({1})}
    assert lat.interior(frozenset({0})) == {0}


def test_support_lattice_diag():
    lat = support_lattice(corpus.load("diag").presentation)
    assert lat.achievable == frozenset({frozenset(), frozenset({0, 1})})
    assert lat.atoms == (frozenset({0, 1}),)
    # Depth-1 blocks cannot carry tail-only values: {0} is not achievable.
    assert lat.interior(frozenset({0})) == frozenset()


def test_support_witness():
    ga = corpus.load("lexp")
    x = support_witness(ga, frozenset({0}))
    assert support(ga.presentation, x) == {0}
    with pytest.raises(PreconditionFailed):
        support_witness(corpus.load("diag"), frozenset({0}))


def test_orthocomplete_group_lexp_and_diag():
    res = orthocomplete_group(lexp_pres())
    assert set(map(frozenset, res.completed.linkage)) == {
        frozenset({0}),
        frozenset({1}),
    }
    diag = corpus.load("diag").presentation
    res = orthocomplete_group(diag)
    assert set(map(frozenset, res.completed.linkage)) == {frozenset({0, 1})}


def test_orthocompletion_idempotent():
    for name in corpus.SYMBOLIC_NAMES:
        p = corpus.load(name).presentation
        once = orthocomplete_group(p).completed
        twice = orthocomplete_group(once).completed
        assert set(map(frozenset, once.linkage)) == set(map(frozenset, twice.linkage))


def test_orthocompletion_finite_identity():
    for name in corpus.FINITE_NAMES:
        m = corpus.load(name)
        assert orthocompletion(m).algebra is m


def test_strong_unit_in_completion():
    res = orthocomplete_group(lexp_pres())
    report = strong_unit_check(res, n_bound=64, samples=50, seed=2)
    assert report["status"] == "pass"
    # The frozen example: ((5,-3),(2,9)) needs n at most 6.
    from pmvlab.lgroup import chain_scale, vec_leq

    p = res.completed
    found = next(
        n
        for n in range(1, 65)
        if vec_leq(
            p.blocks,
            ((5, -3), (2, 9)),
            tuple(chain_scale(k, n, u) for k, u in zip(p.blocks, p.unit)),
        )
    )
    assert found <= 6


def test_is_large_finite():
    for name in corpus.FINITE_NAMES:
        m = corpus.load(name)
        cert = is_large(frozenset(boolean_skeleton(m)), m)
        assert cert.ok, name
        assert is_large(m, m).ok


def test_is_large_finite_failure():
    # {0, 1} inside C2xC2: y = (1,0) is idempotent, so n.y never reaches the
    # top and no nonzero subalgebra element fits below it.
    m = corpus.load("c2c2")
    idx = {m.label(i): i for i in m.elements()}
    cert = is_large(frozenset({idx[(0, 0)], idx[(1, 1)]}), m)
    assert cert.status == "fail"
    assert idx[(1, 0)] in cert.failures


def test_is_large_z_in_q():
    cert = is_large(corpus.load("gamma_z10"), corpus.load("gamma_q10"), samples=100, seed=3)
    assert cert.ok
    assert all(x[0].denominator == 1 for _, _, x in cert.entries)


def test_is_large_lexp_in_completion():
    lexp = corpus.load("lexp")
    o = orthocompletion(lexp).algebra
    cert = is_large(lexp, o, n_bound=16, samples=150, seed=4, radius=8)
    assert cert.ok
    for y, n, x in cert.entries:
        assert lexp.contains(x) and x != lexp.zero


def test_is_orthocomplete():
    lexp = corpus.load("lexp")
    ok, diag = is_orthocomplete(lexp)
    assert not ok  # not strongly projectable
    ok, diag = is_orthocomplete(orthocompletion(lexp).algebra, seed=1)
    assert ok and diag["families"] > 0
    for name in corpus.FINITE_NAMES:
        ok, _ = is_orthocomplete(corpus.load(name))
        assert ok, name


def test_lub_preservation_finite_and_sampled():
    m = corpus.load("p6")
    report = lub_preservation_check(frozenset(boolean_skeleton(m)), m, max_set=4)
    assert report.ok and report.checked > 0
    report = lub_preservation_check(
        corpus.load("gamma_z10"), corpus.load("gamma_q10"), samples=100, seed=5
    )
    assert report.ok


def test_lub_preservation_gate():
    m = corpus.load("c2c2")
    idx = {m.label(i): i for i in m.elements()}
    with pytest.raises(NotLarge):
        lub_preservation_check(frozenset({idx[(0, 0)], idx[(1, 0)]}), m)


def test_polar_correspondence_lexp():
    lexp = corpus.load("lexp")
    o = orthocompletion(lexp).algebra
    corr = polar_correspondence(lexp, o)
    assert len(corr.rho_sub) == 4 and len(corr.rho_sup) == 4
    mapping = dict(corr.pairs)
    assert mapping[frozenset({0})] == frozenset({0})


def test_polar_correspondence_finite():
    for name in corpus.FINITE_NAMES:
        m = corpus.load(name)
        polar_correspondence(frozenset(boolean_skeleton(m)), m)
        polar_correspondence(m, m)


def test_minimal_extension_p6_and_lexp():
    p6 = corpus.load("p6")
    res = minimal_projectable_extension(p6)
    assert res.algebra is p6 and res.iterations == 0
    lexp = corpus.load("lexp")
    res = minimal_projectable_extension(lexp)
    o = orthocomplete_group(lexp.presentation).completed
    assert set(map(frozenset, res.algebra.presentation.linkage)) == set(
        map(frozenset, o.linkage)
    )
    assert res.status == "ok"


def test_minimal_extension_already_projectable():
    diag = corpus.load("diag")
    res = minimal_projectable_extension(diag)
    assert set(map(frozenset, res.algebra.presentation.linkage)) == {frozenset({0, 1})}


def test_minimal_extension_intermediate_case():
    # Three linked deep blocks where only one pair needs cutting: the closure
    # should refine exactly to the atoms, which here means the full cut.
    p = SubdirectPresentation(
        (ZLex(2), ZLex(2), ZLex(2)), ((0, 1, 2),), ((1, 0),) * 3
    )
    res = minimal_projectable_extension(GammaAlgebra(p))
    assert res.status == "ok"
    from pmvlab.summands import classify_projectability

    assert classify_projectability(res.algebra).strongly_projectable
