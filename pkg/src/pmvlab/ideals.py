"""Ideals of pseudo MV-algebras: enumeration, normality, primality, polars,
quotients, representability, and the subdirect decomposition of finite
algebras.  Symbolic polars of interval algebras are indexed by block supports
(see :mod:`pmvlab.ortho` for the support machinery)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import (
    CapExceeded,
    CorrespondenceFailure,
    NoDecomposition,
    NotNormal,
)
from .finite import FinitePMV
from .lgroup import GammaAlgebra, make_finite_gamma


@dataclass(frozen=True)
class FiniteIdeal:
    """An ideal of a finite algebra, stored as its sorted member indices."""

    algebra: FinitePMV
    members: tuple

    def __contains__(self, x) -> bool:
        return x in set(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @staticmethod
    def of(m: FinitePMV, members) -> "FiniteIdeal":
        return FiniteIdeal(m, tuple(sorted(set(members))))


@dataclass(frozen=True)
class SymbolicIdeal:
    """A polar ideal of an interval algebra, described by its block support."""

    algebra: GammaAlgebra
    support: frozenset

    def __contains__(self, x) -> bool:
        from .ortho import support as supp

        return self.algebra.contains(x) and supp(self.algebra.presentation, x) <= self.support


@dataclass
class IdealClassification:
    normal: bool
    prime: bool
    polar: bool
    summand: bool | None = None

    def to_json(self) -> dict:
        out = {"normal": self.normal, "prime": self.prime, "polar": self.polar}
        if self.summand is not None:
            out["summand"] = self.summand
        return out


# ---------------------------------------------------------------------------
# Finite ideal machinery
# ---------------------------------------------------------------------------

def ideal_closure(m: FinitePMV, seed) -> frozenset:
    """Least down-set containing ``seed`` that is closed under oplus."""
    cur = set(seed) | {m.zero}
    while True:
        nxt = set(cur)
        for x in m.elements():
            if any(m.leq(x, i) for i in cur):
                nxt.add(x)
        for a, b in product(tuple(nxt), tuple(nxt)):
            nxt.add(m.oplus(a, b))
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def is_ideal(m: FinitePMV, members) -> bool:
    s = set(members)
    if m.zero not in s:
        return False
    down = all(y in s for x in s for y in m.elements() if m.leq(y, x))
    return down and all(m.oplus(a, b) in s for a in s for b in s)


def is_normal(m: FinitePMV, members) -> bool:
    s = set(members)
    return all(
        {m.oplus(x, i) for i in s} == {m.oplus(i, x) for i in s} for x in m.elements()
    )


def is_prime(m: FinitePMV, members) -> bool:
    s = set(members)
    return all(
        x in s or y in s
        for x, y in product(m.elements(), m.elements())
        if m.meet(x, y) in s
    )


def classify_ideal(m: FinitePMV, ideal: FiniteIdeal) -> IdealClassification:
    members = set(ideal.members)
    pol = set(polar(m, polar(m, members).members).members)
    return IdealClassification(
        normal=is_normal(m, members),
        prime=is_prime(m, members),
        polar=pol == members,
    )


def enumerate_ideals(m: FinitePMV, cap: int = 64):
    """All ideals, found by closing single-element extensions, with their
    classification.  Deterministic order: by size, then member tuple."""
    if m.size > cap:
        raise CapExceeded(f"carrier size {m.size} exceeds ideal-enumeration cap {cap}")
    found = {frozenset({m.zero})}
    frontier = [frozenset({m.zero})]
    while frontier:
        base = frontier.pop()
        for x in m.elements():
            if x in base:
                continue
            closed = ideal_closure(m, base | {x})
            if closed not in found:
                found.add(closed)
                frontier.append(closed)
    ideals = sorted(found, key=lambda s: (len(s), tuple(sorted(s))))
    out = []
    for s in ideals:
        ideal = FiniteIdeal.of(m, s)
        out.append((ideal, classify_ideal(m, ideal)))
    return out


def generated_normal_ideal(m: FinitePMV, xs) -> FiniteIdeal:
    """Least normal ideal containing ``xs``, by saturation.

    Besides down-set and oplus closure, each step adds the exchange elements
    (x (+) i) (.) x^- and x^~ (.) (i (+) x), which any normal ideal containing
    ``i`` must contain.
    """
    cur = set(xs) | {m.zero}
    while True:
        nxt = frozenset(ideal_closure(m, cur))
        add = set(nxt)
        for x in m.elements():
            for i in nxt:
                add.add(m.ominus_minus(m.oplus(x, i), x))
                add.add(m.ominus_tilde(x, m.oplus(i, x)))
        if add == cur:
            return FiniteIdeal.of(m, cur)
        cur = add


def polar(m, xs):
    """X^bot = {y | x ^ y = 0 for all x in X}."""
    if isinstance(m, FinitePMV):
        members = [y for y in m.elements() if all(m.meet(x, y) == m.zero for x in xs)]
        return FiniteIdeal.of(m, members)
    from .ortho import support as supp, support_lattice

    lat = support_lattice(m.presentation)
    s = frozenset()
    for x in xs:
        s |= supp(m.presentation, x)
    return SymbolicIdeal(m, lat.interior(frozenset(range(lat.n_blocks)) - s))


def polar_lattice(m):
    """rho(M): all ideals with I = I^bot^bot, with complement I -> I^bot."""
    if isinstance(m, FinitePMV):
        return [ideal for ideal, cls in enumerate_ideals(m) if cls.polar]
    from .ortho import support_lattice

    lat = support_lattice(m.presentation)
    return [SymbolicIdeal(m, t) for t in sorted(lat.polar_supports, key=sorted)]


@dataclass
class QuotientResult:
    algebra: FinitePMV
    projection: tuple
    kernel: FiniteIdeal
    degenerate: bool


def quotient(m: FinitePMV, ideal: FiniteIdeal) -> QuotientResult:
    """M / I for a normal ideal I, via x ~ y iff x (.) y^-, y (.) x^- in I."""
    members = set(ideal.members)
    if not is_ideal(m, members) or not is_normal(m, members):
        raise NotNormal(f"{tuple(sorted(members))} is not a normal ideal")

    def related(x, y):
        return m.ominus_minus(x, y) in members and m.ominus_minus(y, x) in members

    reps: list = []
    proj = [None] * m.size
    for x in m.elements():
        for ri, r in enumerate(reps):
            if related(x, r):
                proj[x] = ri
                break
        else:
            proj[x] = len(reps)
            reps.append(x)
    size = len(reps)
    oplus = tuple(tuple(proj[m.oplus(a, b)] for b in reps) for a in reps)
    neg_m = tuple(proj[m.neg_minus(a)] for a in reps)
    neg_t = tuple(proj[m.neg_tilde(a)] for a in reps)
    q = FinitePMV(size, oplus, neg_m, neg_t, zero=proj[m.zero], one=proj[m.one])
    return QuotientResult(q, tuple(proj), ideal, degenerate=size == 1)


def is_representable(m):
    """True iff every singleton polar is a normal ideal.

    Interval algebras over products of chains are representable by
    construction; the finite case is decided exhaustively.
    """
    if isinstance(m, GammaAlgebra):
        return True, None
    for a in m.elements():
        p = polar(m, [a])
        if not is_normal(m, p.members):
            return False, a
    return True, None


def subdirect_decomposition(m: FinitePMV):
    """A minimal family of prime normal ideals with zero intersection.

    Quotients by the members are chains; ties are broken by lexicographic
    ideal order, so the output is canonical.
    """
    candidates = [
        ideal
        for ideal, cls in enumerate_ideals(m)
        if cls.prime and cls.normal and len(ideal) < m.size
    ]
    for k in range(1, len(candidates) + 1):
        for family in combinations(candidates, k):
            meet = set(family[0].members)
            for ideal in family[1:]:
                meet &= set(ideal.members)
            if meet == {m.zero}:
                return list(family)
    raise NoDecomposition("no prime normal ideals intersect to zero; input not representable")


# ---------------------------------------------------------------------------
# Ideal/l-ideal correspondence for finite Gamma(Z^k, u)
# ---------------------------------------------------------------------------

@dataclass
class CorrespondenceTable:
    """Bijection between normal ideals of Gamma(Z^k, u) and the l-ideals of
    Z^k (coordinate-subset kernels)."""

    chain_units: tuple
    pairs: list  # (ideal member tuple, sorted coordinate subset)

    def to_json(self) -> dict:
        return {
            "chain_units": list(self.chain_units),
            "pairs": [
                {"ideal": list(i), "coords": list(c)} for i, c in self.pairs
            ],
        }


def ideal_group_correspondence(chain_units, box_cap: int = 2) -> CorrespondenceTable:
    """Enumerate both sides and verify the two maps are mutually inverse.

    The map sends an l-ideal H to {x | |x| ^ u in H} and an ideal J back to
    the subgroup supported on J's coordinates; within the box
    [-box_cap*u, box_cap*u] membership is verified pointwise.
    """
    units = tuple(int(u) for u in chain_units)
    m = make_finite_gamma(units)
    k = len(units)
    normal_ideals = [i for i, c in enumerate_ideals(m) if c.normal]

    def ideal_coords(ideal: FiniteIdeal) -> frozenset:
        s: set = set()
        for idx in ideal.members:
            s |= {i for i, v in enumerate(m.labels[idx]) if v != 0}
        return frozenset(s)

    def phi_members(coords) -> tuple:
        # Psi(H_S) = H_S intersect [0, u] inside the finite carrier.
        return tuple(
            sorted(
                idx
                for idx in m.elements()
                if all(v == 0 for i, v in enumerate(m.labels[idx]) if i not in coords)
            )
        )

    subsets = [frozenset(c) for r in range(k + 1) for c in combinations(range(k), r)]
    to_coords = {ideal.members: ideal_coords(ideal) for ideal in normal_ideals}
    to_ideal = {s: phi_members(s) for s in subsets}
    if len(normal_ideals) != len(subsets):
        raise CorrespondenceFailure(
            f"{len(normal_ideals)} normal ideals vs {len(subsets)} l-ideals"
        )
    for ideal in normal_ideals:
        if to_ideal[to_coords[ideal.members]] != ideal.members:
            raise CorrespondenceFailure(f"round trip failed at ideal {ideal.members}")
    for s in subsets:
        if to_coords[to_ideal[s]] != s:
            raise CorrespondenceFailure(f"round trip failed at coordinate set {sorted(s)}")
    # Order preservation both ways.
    for i1, i2 in product(normal_ideals, normal_ideals):
        inc_i = set(i1.members) <= set(i2.members)
        inc_c = to_coords[i1.members] <= to_coords[i2.members]
        if inc_i != inc_c:
            raise CorrespondenceFailure("order not preserved")
    # Pointwise check of the membership criterion |x| ^ u in J on a box.
    ranges = [range(-box_cap * u, box_cap * u + 1) for u in units]
    index = {lab: i for i, lab in enumerate(m.labels)}
    for ideal in normal_ideals:
        coords = to_coords[ideal.members]
        for x in product(*ranges):
            abs_cap = tuple(min(abs(v), u) for v, u in zip(x, units))
            in_phi = index[abs_cap] in set(ideal.members)
            in_kernel = all(v == 0 for i, v in enumerate(x) if i not in coords)
            if in_phi != in_kernel:
                raise CorrespondenceFailure(f"membership mismatch at {x} for {ideal.members}")
    pairs = [
        (ideal.members, tuple(sorted(to_coords[ideal.members]))) for ideal in normal_ideals
    ]
    return CorrespondenceTable(units, pairs)
