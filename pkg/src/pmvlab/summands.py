"""Direct summands, the summand-ideal/Boolean correspondence, Boolean
pseudocomplements, and projectability classification."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    InternalInconsistency,
    NotStronglyProjectable,
    NotSummand,
)
from .finite import FinitePMV, boolean_skeleton, is_boolean
from .ideals import FiniteIdeal, SymbolicIdeal, generated_normal_ideal, polar, polar_lattice
from .ortho import support, support_lattice, support_witness


@dataclass(frozen=True)
class SummandDecomposition:
    """A direct decomposition M = I x I' with Boolean witnesses w, w'."""

    ideal: object
    complement: object
    witness: object
    complement_witness: object


def summand_ideals(m):
    """All summand-ideals, one per Boolean element: the decompositions
    M = down(w) x down(w') for w in B(M)."""
    skel = boolean_skeleton(m)
    out = []
    if isinstance(m, FinitePMV):
        for w in skel:
            wc = skel.complement(w)
            out.append(
                SummandDecomposition(
                    ideal=FiniteIdeal.of(m, m.downset(w)),
                    complement=FiniteIdeal.of(m, m.downset(wc)),
                    witness=w,
                    complement_witness=wc,
                )
            )
        return out
    p = m.presentation
    for w in skel:
        wc = skel.complement(w)
        out.append(
            SummandDecomposition(
                ideal=SymbolicIdeal(m, support(p, w)),
                complement=SymbolicIdeal(m, support(p, wc)),
                witness=w,
                complement_witness=wc,
            )
        )
    return out


def _witness_of(m, ideal):
    """The Boolean element whose down-set is ``ideal``, or None."""
    if isinstance(m, FinitePMV):
        members = frozenset(ideal.members)
        for w in boolean_skeleton(m):
            if m.downset(w) == members:
                return w
        return None
    lat = support_lattice(m.presentation)
    if not lat.class_union(ideal.support):
        return None
    return m.class_indicator(ideal.support)


def decompose(m, ideal, x):
    """Split x as a (+) b with a in the ideal and b in its complement.

    The components are x ^ w and x ^ w' for the Boolean witness w; raises
    :class:`NotSummand` if the ideal is not a summand-ideal.
    """
    w = _witness_of(m, ideal)
    if w is None:
        raise NotSummand("ideal is not the down-set of a Boolean element")
    if isinstance(m, FinitePMV):
        wc = boolean_skeleton(m).complement(w)
        m.check_element(x)
    else:
        wc = m.neg_minus(w)
        m.check_element(x)
    a, b = m.meet(x, w), m.meet(x, wc)
    if m.oplus(a, b) != x or m.meet(a, b) not in (m.zero,):
        raise InternalInconsistency(f"decomposition of {x!r} failed to recompose")
    return a, b


def sum_boolean_iso(m):
    """Verify w -> down(w) is an isomorphism from B(M) onto the summand-ideal
    lattice: joins map to generated normal ideals of unions, meets to
    intersections, complements to polars."""
    skel = boolean_skeleton(m)
    if isinstance(m, FinitePMV):
        table = {w: m.downset(w) for w in skel}
        if len(set(map(frozenset, table.values()))) != len(table):
            raise InternalInconsistency("w -> down(w) is not injective on B(M)")
        for a, b in product(list(skel), repeat=2):
            join_ideal = generated_normal_ideal(m, table[a] | table[b])
            if frozenset(join_ideal.members) != table[skel.join(a, b)]:
                raise InternalInconsistency(f"join mismatch at ({a}, {b})")
            if table[a] & table[b] != table[skel.meet(a, b)]:
                raise InternalInconsistency(f"meet mismatch at ({a}, {b})")
        for a in skel:
            if frozenset(polar(m, table[a]).members) != table[skel.complement(a)]:
                raise InternalInconsistency(f"complement/polar mismatch at {a}")
        return [(w, FiniteIdeal.of(m, table[w])) for w in skel]
    p = m.presentation
    table = {w: support(p, w) for w in skel}
    for a, b in product(list(skel), repeat=2):
        if table[a] | table[b] != table[skel.join(a, b)]:
            raise InternalInconsistency(f"join mismatch at ({a}, {b})")
        if table[a] & table[b] != table[skel.meet(a, b)]:
            raise InternalInconsistency(f"meet mismatch at ({a}, {b})")
    lat = support_lattice(p)
    for a in skel:
        if lat.interior(lat.universe - table[a]) != table[skel.complement(a)]:
            raise InternalInconsistency(f"complement/polar mismatch at {a}")
    return [(w, SymbolicIdeal(m, table[w])) for w in skel]


def pseudocomplement(m, a):
    """The Boolean element b with {a}^bot = down(b); requires strong
    projectability."""
    pol = polar(m, [a])
    b = _witness_of(m, pol)
    if b is None:
        raise NotStronglyProjectable(f"polar of {a!r} is not a summand-ideal")
    if isinstance(m, FinitePMV):
        if not is_boolean(m, b):
            raise InternalInconsistency("witness is not Boolean")
        for x in m.elements():
            if (m.meet(x, a) == m.zero) != m.leq(x, b):
                raise InternalInconsistency(f"pseudocomplement law fails at {x}")
    return b


@dataclass
class ProjectabilityResult:
    projectable: bool
    strongly_projectable: bool
    witness: object = None  # element/ideal breaking the stronger property that holds


def classify_projectability(m) -> ProjectabilityResult:
    """Decide (strong) projectability.

    Finite: check every polar ideal (strong) and every principal polar
    (plain) for a Boolean witness.  Symbolic: a polar is a summand iff its
    support is a union of linkage classes, so both properties reduce to
    support arithmetic; the witness is an element whose polar support breaks
    the stronger property.
    """
    if isinstance(m, FinitePMV):
        strongly = True
        witness = None
        for ideal in polar_lattice(m):
            if _witness_of(m, ideal) is None:
                strongly = False
                witness = ideal
                break
        projectable = True
        for a in m.elements():
            if _witness_of(m, polar(m, [a])) is None:
                projectable = False
                witness = a
                break
        return ProjectabilityResult(projectable, strongly, witness)
    lat = support_lattice(m.presentation)
    strongly = all(lat.class_union(t) for t in lat.polar_supports)
    projectable = all(
        lat.class_union(lat.interior(lat.universe - s)) for s in lat.achievable
    )
    witness = None
    if not projectable:
        s = next(
            s
            for s in sorted(lat.achievable, key=sorted)
            if not lat.class_union(lat.interior(lat.universe - s))
        )
        witness = support_witness(m, s)
    elif not strongly:
        t = next(
            t for t in sorted(lat.polar_supports, key=sorted) if not lat.class_union(t)
        )
        witness = SymbolicIdeal(m, t)
    return ProjectabilityResult(projectable, strongly, witness)
