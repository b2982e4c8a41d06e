"""Ideal enumeration, normality, polars, quotients, and correspondences."""

from itertools import combinations, product

import pytest

from pmvlab import corpus
from pmvlab.errors import CapExceeded, NotNormal
from pmvlab.ideals import (
    FiniteIdeal,
    classify_ideal,
    enumerate_ideals,
    generated_normal_ideal,
    ideal_group_correspondence,
    is_ideal,
    is_normal,
    is_prime,
    is_representable,
    polar,
    polar_lattice,
    quotient,
    subdirect_decomposition,
)
from pmvlab.lgroup import make_finite_gamma


def label_set(m, members):
    return sorted(m.label(i) for i in members)


def test_p6_has_four_ideals():
    m = corpus.load("p6")
    ideals = enumerate_ideals(m)
    assert len(ideals) == 4
    for ideal, cls in ideals:
        assert is_ideal(m, ideal.members)
        assert cls.normal  # commutative algebra: every ideal is normal


def test_ideal_enumeration_oracle():
    # Brute-force over all subsets must find exactly the same ideals.
    for name in ("c2", "c3", "p6", "c2c2"):
        m = corpus.load(name)
        brute = {
            frozenset(s)
            for r in range(m.size + 1)
            for s in combinations(range(m.size), r)
            if is_ideal(m, s)
        }
        fast = {frozenset(i.members) for i, _ in enumerate_ideals(m)}
        assert fast == brute, name


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_ideals(make_finite_gamma((9, 9)), cap=64)


def test_prime_ideals_of_p6():
    m = corpus.load("p6")
    # Proper primes: the two coordinate kernels (M itself is vacuously prime).
    primes = [
        i for i, c in enumerate_ideals(m) if c.prime and len(i) < m.size
    ]
    assert len(primes) == 2
    for ideal in primes:
        q = quotient(m, ideal).algebra
        assert all(q.leq(x, y) or q.leq(y, x) for x, y in product(q.elements(), repeat=2))


def test_generated_normal_ideal_oracle():
    # Against the intersection of all normal ideals containing the seed.
    for name in ("c3", "p6", "c2c2"):
        m = corpus.load(name)
        all_normal = [
            set(i.members) for i, c in enumerate_ideals(m) if c.normal
        ]
        for x in m.elements():
            gen = set(generated_normal_ideal(m, [x]).members)
            oracle = set(m.elements())
            for s in all_normal:
                if x in s:
                    oracle &= s
            assert gen == oracle, (name, x)


def test_polar_example_p6():
    m = corpus.load("p6")
    idx = {m.label(i): i for i in m.elements()}
    pol = polar(m, [idx[(0, 1)]])
    assert label_set(m, pol.members) == [(0, 0), (1, 0)]


def test_polar_lattice_p6():
    m = corpus.load("p6")
    lattice = polar_lattice(m)
    assert len(lattice) == 4
    for ideal in lattice:
        cls = classify_ideal(m, ideal)
        assert cls.polar


def test_symbolic_polar_lattice():
    lexp = corpus.load("lexp")
    lattice = polar_lattice(lexp)
    assert [sorted(i.support) for i in lattice] == [[], [0], [0, 1], [1]]
    # Membership through the support criterion.
    tail = ((0, 5), (0, 0))
    assert tail in lattice[1] and tail not in lattice[3]


def test_quotient_requires_normal():
    m = corpus.load("p6")
    not_ideal = FiniteIdeal.of(m, [m.zero, m.one])
    with pytest.raises(NotNormal):
        quotient(m, not_ideal)


def test_quotient_by_coordinate_kernel():
    m = corpus.load("p6")
    idx = {m.label(i): i for i in m.elements()}
    kernel = FiniteIdeal.of(m, [idx[(0, 0)], idx[(1, 0)]])
    res = quotient(m, kernel)
    assert res.algebra.size == 3 and not res.degenerate
    # Quotient by the whole algebra is degenerate.
    assert quotient(m, FiniteIdeal.of(m, m.elements())).degenerate


def test_representability_and_decomposition():
    for name in ("c2", "c3", "p6", "c2c2"):
        m = corpus.load(name)
        flag, _ = is_representable(m)
        assert flag
        family = subdirect_decomposition(m)
        meet = set(family[0].members)
        for ideal in family[1:]:
            meet &= set(ideal.members)
        assert meet == {m.zero}
        for ideal in family:
            assert is_prime(m, ideal.members) and is_normal(m, ideal.members)


def test_group_correspondence_k2():
    table = ideal_group_correspondence((1, 2))
    assert len(table.pairs) == 4
    coords = {c for _, c in table.pairs}
    assert coords == {(), (0,), (1,), (0, 1)}
    assert table.to_json()["chain_units"] == [1, 2]
