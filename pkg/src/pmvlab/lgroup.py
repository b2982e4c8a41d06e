"""Exact arithmetic for chains, their products, and interval algebras.

Three chain kinds are supported:

* ``ZLex(depth)`` -- integer vectors of length ``depth`` under the
  lexicographic order,
* ``Q`` -- the rationals,
* ``NCMatrix`` -- pairs ``(a, b)`` with ``a`` a positive rational, composed
  by ``(a, b) * (a', b') = (a*a', a*b' + b)`` and ordered by the cone
  ``a > 1 or (a = 1 and b >= 0)``.  This chain is non-commutative.

A :class:`SubdirectPresentation` carves an l-subgroup out of a finite product
of chains by requiring equal leading coordinates inside each linkage class;
such constraints are preserved by the group and lattice operations, so the
presented set is an l-subgroup by construction.  All arithmetic is exact
(arbitrary-precision integers and :class:`fractions.Fraction`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import (
    BadPartition,
    CapExceeded,
    ClosureViolation,
    IsoFailure,
    NotChainFactor,
    NotInCarrier,
    PreconditionFailed,
    ShapeMismatch,
    UnitNotInG,
    UnitNotStrong,
)
from .finite import FinitePMV, TermOps, boolean_skeleton, check_axioms


# ---------------------------------------------------------------------------
# Chain kinds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZLex:
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ShapeMismatch(f"zlex depth must be >= 1, got {self.depth}")


@dataclass(frozen=True)
class Q:
    pass


@dataclass(frozen=True)
class NCMatrix:
    pass


NC_IDENTITY = (Fraction(1), Fraction(0))


def chain_zero(kind):
    if isinstance(kind, ZLex):
        return (0,) * kind.depth
    if isinstance(kind, Q):
        return Fraction(0)
    return NC_IDENTITY


def chain_normalize(kind, value):
    """Coerce a raw value into the chain's canonical representation."""
    if isinstance(kind, ZLex):
        try:
            t = tuple(int(v) for v in value)
        except TypeError:
            raise ShapeMismatch(f"zlex value must be a sequence, got {value!r}")
        if len(t) != kind.depth:
            raise ShapeMismatch(f"zlex value {t} has depth {len(t)}, expected {kind.depth}")
        return t
    if isinstance(kind, Q):
        return Fraction(value)
    a, b = value
    a, b = Fraction(a), Fraction(b)
    if a <= 0:
        raise ShapeMismatch(f"ncmatrix value must have positive first entry, got {a}")
    return (a, b)


def chain_add(kind, x, y):
    if isinstance(kind, ZLex):
        return tuple(a + b for a, b in zip(x, y))
    if isinstance(kind, Q):
        return x + y
    return (x[0] * y[0], x[0] * y[1] + x[1])


def chain_neg(kind, x):
    if isinstance(kind, ZLex):
        return tuple(-a for a in x)
    if isinstance(kind, Q):
        return -x
    return (1 / x[0], -x[1] / x[0])


def chain_cmp(kind, x, y) -> int:
    if isinstance(kind, (ZLex, Q)):
        return (x > y) - (x < y)
    d = chain_add(kind, chain_neg(kind, x), y)
    if d == NC_IDENTITY:
        return 0
    return -1 if d[0] > 1 or (d[0] == 1 and d[1] > 0) else 1


def chain_scale(kind, n: int, x):
    """n-fold sum (n-th power for the matrix chain), n >= 0."""
    acc = chain_zero(kind)
    for _ in range(n):
        acc = chain_add(kind, acc, x)
    return acc


def leading(kind, x):
    """The coordinate that decides comparisons first; None for q/ncmatrix."""
    return x[0] if isinstance(kind, ZLex) else None


# ---------------------------------------------------------------------------
# Products of chains
# ---------------------------------------------------------------------------

GROUP_OPS = ("add", "sub", "neg", "meet", "join", "abs", "pos", "neg_part")


def normalize(blocks, x):
    if len(x) != len(blocks):
        raise ShapeMismatch(f"element has {len(x)} components, expected {len(blocks)}")
    return tuple(chain_normalize(k, v) for k, v in zip(blocks, x))


def vec_zero(blocks):
    return tuple(chain_zero(k) for k in blocks)


def vec_add(blocks, *args):
    acc = args[0]
    for other in args[1:]:
        acc = tuple(chain_add(k, a, b) for k, a, b in zip(blocks, acc, other))
    return acc


def vec_neg(blocks, x):
    return tuple(chain_neg(k, v) for k, v in zip(blocks, x))


def vec_sub(blocks, x, y):
    return vec_add(blocks, x, vec_neg(blocks, y))


def vec_meet(blocks, x, y):
    return tuple(a if chain_cmp(k, a, b) <= 0 else b for k, a, b in zip(blocks, x, y))


def vec_join(blocks, x, y):
    return tuple(a if chain_cmp(k, a, b) >= 0 else b for k, a, b in zip(blocks, x, y))


def vec_pos(blocks, x):
    return vec_join(blocks, x, vec_zero(blocks))


def vec_neg_part(blocks, x):
    return vec_join(blocks, vec_neg(blocks, x), vec_zero(blocks))


def vec_abs(blocks, x):
    return vec_add(blocks, vec_pos(blocks, x), vec_neg_part(blocks, x))


def vec_leq(blocks, x, y) -> bool:
    return all(chain_cmp(k, a, b) <= 0 for k, a, b in zip(blocks, x, y))


def group_eval(blocks, op: str, *args):
    """Evaluate a group/lattice operation on elements of the product."""
    if op not in GROUP_OPS:
        raise PreconditionFailed(f"unknown group op {op!r}")
    args = tuple(normalize(blocks, a) for a in args)
    fn = {
        "add": vec_add,
        "sub": vec_sub,
        "neg": vec_neg,
        "meet": vec_meet,
        "join": vec_join,
        "abs": vec_abs,
        "pos": vec_pos,
        "neg_part": vec_neg_part,
    }[op]
    return fn(blocks, *args)


def sample_chain(kind, rng: random.Random, radius: int = 8, denom_bound: int = 12):
    if isinstance(kind, ZLex):
        return tuple(rng.randint(-radius, radius) for _ in range(kind.depth))
    if isinstance(kind, Q):
        return Fraction(rng.randint(-radius, radius), rng.randint(1, denom_bound))
    a = Fraction(rng.randint(1, radius), rng.randint(1, radius))
    b = Fraction(rng.randint(-radius, radius), rng.randint(1, 4))
    return (a, b)


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubdirectPresentation:
    """A finitely presented l-subgroup of a finite product of chains.

    ``linkage`` partitions the block indices; inside each class the leading
    coordinates must agree.  Only zlex blocks may share a class.
    """

    blocks: tuple
    linkage: tuple
    unit: tuple

    def __post_init__(self):
        seen: set = set()
        for cls in self.linkage:
            if not cls:
                raise BadPartition("empty linkage class")
            for i in cls:
                if not (0 <= i < len(self.blocks)):
                    raise BadPartition(f"block index {i} out of range")
                if i in seen:
                    raise BadPartition(f"block index {i} appears in two classes")
                seen.add(i)
            if len(cls) > 1 and any(not isinstance(self.blocks[i], ZLex) for i in cls):
                raise BadPartition("only zlex blocks may be linked")
        if seen != set(range(len(self.blocks))):
            raise BadPartition("linkage does not cover all blocks")
        object.__setattr__(self, "unit", normalize(self.blocks, self.unit))
        if not self.member(self.unit):
            raise UnitNotInG(f"unit {self.unit!r} fails the linkage constraints")
        for i, kind in enumerate(self.blocks):
            u = self.unit[i]
            strong = (
                (isinstance(kind, ZLex) and u[0] >= 1)
                or (isinstance(kind, Q) and u > 0)
                or (isinstance(kind, NCMatrix) and chain_cmp(kind, NC_IDENTITY, u) < 0)
            )
            if not strong:
                raise UnitNotStrong(f"unit component {u!r} at block {i} is not strictly positive")

    def member(self, x) -> bool:
        """True iff x satisfies every linkage equality constraint."""
        if len(x) != len(self.blocks):
            return False
        for cls in self.linkage:
            if len(cls) > 1:
                leads = {leading(self.blocks[i], x[i]) for i in cls}
                if len(leads) != 1:
                    return False
        return True

    def sample(self, rng: random.Random, radius: int = 8, denom_bound: int = 12):
        """A random member of G inside a coordinate box."""
        vals = [None] * len(self.blocks)
        for cls in self.linkage:
            if len(cls) > 1:
                lead = rng.randint(-radius, radius)
                for i in cls:
                    depth = self.blocks[i].depth
                    vals[i] = (lead,) + tuple(rng.randint(-radius, radius) for _ in range(depth - 1))
            else:
                (i,) = cls
                vals[i] = sample_chain(self.blocks[i], rng, radius, denom_bound)
        return tuple(vals)

    def refines(self, other: "SubdirectPresentation") -> bool:
        """True iff this presentation's linkage classes refine ``other``'s.

        Refinement means every member of ``other`` is a member of ``self``'s
        ambient group: coarser classes impose more equality constraints.
        """
        if self.blocks != other.blocks or self.unit != other.unit:
            return False
        mine = [frozenset(c) for c in self.linkage]
        return all(any(frozenset(c) >= m for c in other.linkage) for m in mine)


@dataclass
class PresentationReport:
    valid: bool
    samples: int
    seed: int


def validate_presentation(
    p: SubdirectPresentation, samples: int = 10_000, seed: int = 0, radius: int = 8
) -> PresentationReport:
    """Structural checks plus a sampled closure check of G under the lattice ops.

    Structural failures raise; closure failures raise :class:`ClosureViolation`
    with a witness pair.  Construction of ``p`` already enforced the partition,
    unit-membership, and strong-unit properties.
    """
    rng = random.Random(seed)
    blocks = p.blocks
    for _ in range(samples):
        x, y = p.sample(rng, radius), p.sample(rng, radius)
        for op in ("add", "meet", "join"):
            z = group_eval(blocks, op, x, y)
            if not p.member(z):
                raise ClosureViolation(f"{op} of {x!r} and {y!r} leaves G: {z!r}")
        if not p.member(vec_neg(blocks, x)):
            raise ClosureViolation(f"negation of {x!r} leaves G")
    return PresentationReport(valid=True, samples=samples, seed=seed)


# ---------------------------------------------------------------------------
# Interval algebras Gamma(G, u)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaAlgebra(TermOps):
    """The interval [0, u] of a presented unital l-group.

    Operations are the truncated group operations; for the matrix chain the
    additive formulas are transcribed multiplicatively, giving
    ``x^- = u * x^-1`` and ``x^~ = x^-1 * u``.
    """

    presentation: SubdirectPresentation

    @property
    def blocks(self):
        return self.presentation.blocks

    @cached_property
    def zero(self):
        return vec_zero(self.blocks)

    @property
    def one(self):
        return self.presentation.unit

    def contains(self, x) -> bool:
        return (
            len(x) == len(self.blocks)
            and self.presentation.member(x)
            and vec_leq(self.blocks, self.zero, x)
            and vec_leq(self.blocks, x, self.one)
        )

    def check_element(self, x) -> None:
        if not self.contains(x):
            raise NotInCarrier(f"{x!r} is not in [0, u] of this presentation")

    # -- primitives ---------------------------------------------------------

    def oplus(self, x, y):
        return vec_meet(self.blocks, vec_add(self.blocks, x, y), self.one)

    def neg_minus(self, x):
        return vec_add(self.blocks, self.one, vec_neg(self.blocks, x))

    def neg_tilde(self, x):
        return vec_add(self.blocks, vec_neg(self.blocks, x), self.one)

    def odot(self, x, y):
        diff = vec_add(self.blocks, x, vec_neg(self.blocks, self.one), y)
        return vec_join(self.blocks, diff, self.zero)

    def join(self, x, y):
        return vec_join(self.blocks, x, y)

    def meet(self, x, y):
        return vec_meet(self.blocks, x, y)

    def leq(self, x, y) -> bool:
        return vec_leq(self.blocks, x, y)

    # -- sampling and enumeration -------------------------------------------

    def sample_carrier(self, rng: random.Random, radius: int = 8, denom_bound: int = 12):
        raw = self.presentation.sample(rng, radius, denom_bound)
        return vec_meet(self.blocks, vec_join(self.blocks, raw, self.zero), self.one)

    def boolean_elements(self):
        """B(M) for a linkage presentation: all-or-nothing copies of u per class.

        In a chain interval the only idempotents are 0 and u, and linkage
        forces whole classes to switch together.
        """
        classes = self.presentation.linkage
        out = []
        for mask in range(1 << len(classes)):
            chosen = {i for c, cls in enumerate(classes) if mask >> c & 1 for i in cls}
            out.append(
                tuple(
                    self.one[i] if i in chosen else self.zero[i]
                    for i in range(len(self.blocks))
                )
            )
        return out

    def class_indicator(self, block_indices):
        """u restricted to the given blocks, zero elsewhere."""
        return tuple(
            self.one[i] if i in set(block_indices) else self.zero[i]
            for i in range(len(self.blocks))
        )


def gamma_eval(ga: GammaAlgebra, op: str, *args, n: int | None = None):
    """Carrier-checked evaluation of a derived operation on Gamma(G, u)."""
    from .finite import eval_term

    args = tuple(normalize(ga.blocks, a) for a in args)
    for a in args:
        ga.check_element(a)
    return eval_term(ga, op, *args, n=n)


# ---------------------------------------------------------------------------
# Finite Gamma(Z^m, u) and its inverse
# ---------------------------------------------------------------------------

def make_finite_gamma(chain_units, cap: int = 4096) -> FinitePMV:
    """Build the finite MV-algebra Gamma(Z^m, u) as explicit tables.

    The carrier enumerates the box prod [0, u_i] with the first coordinate
    varying fastest; ``labels`` carries the coordinate tuples.
    """
    units = tuple(int(u) for u in chain_units)
    if not units or any(u < 1 for u in units):
        raise PreconditionFailed(f"chain units must be positive, got {chain_units!r}")
    size = 1
    for u in units:
        size *= u + 1
        if size > cap:
            raise CapExceeded(f"carrier size exceeds cap {cap}")
    labels = []
    for flat in range(size):
        coords, rest = [], flat
        for u in units:
            coords.append(rest % (u + 1))
            rest //= u + 1
        labels.append(tuple(coords))
    index = {lab: i for i, lab in enumerate(labels)}
    oplus = tuple(
        tuple(
            index[tuple(min(a + b, u) for a, b, u in zip(x, y, units))]
            for y in labels
        )
        for x in labels
    )
    neg = tuple(index[tuple(u - a for a, u in zip(x, units))] for x in labels)
    return FinitePMV(
        size=size,
        oplus_table=oplus,
        neg_minus_table=neg,
        neg_tilde_table=neg,
        zero=index[tuple(0 for _ in units)],
        one=index[units],
        labels=tuple(labels),
    )


def xi_finite(m: FinitePMV):
    """Recover chain units with Gamma(Z^m, units) isomorphic to ``m``.

    Splits ``m`` along the atoms of B(M) into directly indecomposable
    factors, each of which must be a chain.  Returns ``(units, mapping)``
    where ``mapping[i]`` is the coordinate tuple of carrier index ``i``; the
    round trip through :func:`make_finite_gamma` is verified.
    """
    report = check_axioms(m, first_only=True)
    if not report.passed:
        raise PreconditionFailed(f"input fails axiom {report.violations[0][0]}")
    from .finite import classify

    if not classify(m).commutative:
        raise PreconditionFailed("input is not commutative")
    skel = boolean_skeleton(m)
    nonzero = [a for a in skel.elements if a != m.zero]
    atoms = sorted(
        a for a in nonzero if not any(b != a and m.leq(b, a) for b in nonzero)
    )
    chains = []
    for a in atoms:
        chain = sorted(m.downset(a), key=lambda x: sum(m.leq(y, x) for y in m.downset(a)))
        for x, y in product(chain, chain):
            if not m.leq(x, y) and not m.leq(y, x):
                raise NotChainFactor(f"factor below {a} is not totally ordered: {x}, {y}")
        chains.append(chain)
    units = [len(c) - 1 for c in chains]
    mapping = tuple(
        tuple(chain.index(m.meet(x, a)) for a, chain in zip(atoms, chains))
        for x in m.elements()
    )
    model = make_finite_gamma(units) if units else None
    if model is None or model.size != m.size or len(set(mapping)) != m.size:
        raise IsoFailure("carrier bijection failed")
    idx = {lab: i for i, lab in enumerate(model.labels)}
    phi = [idx[t] for t in mapping]
    for x in m.elements():
        if model.neg_minus(phi[x]) != phi[m.neg_minus(x)]:
            raise IsoFailure(f"negation not preserved at {x}")
        for y in m.elements():
            if model.oplus(phi[x], phi[y]) != phi[m.oplus(x, y)]:
                raise IsoFailure(f"oplus not preserved at ({x}, {y})")
    return units, mapping
