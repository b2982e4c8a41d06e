"""Supports, orthocompletion, largeness, and minimal projectable extensions.

For a presentation of G inside a finite product of chains, the achievable
supports (sets Supp(x) for x in G) and the supports of polar subgroups form
finite lattices computable from the linkage structure alone.  With finitely
many blocks the direct-limit construction of the orthocompletion collapses to
a single cardinal product over the atoms of the polar-support lattice, so
O(G) is simply the same blocks with every linkage class cut along the atoms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import (
    CorrespondenceFailure,
    NotFiniteIndex,
    NotInG,
    NotLarge,
    PreconditionFailed,
)
from .finite import FinitePMV
from .lgroup import (
    GammaAlgebra,
    Q,
    SubdirectPresentation,
    ZLex,
    chain_cmp,
    chain_scale,
    chain_zero,
    vec_join,
    vec_leq,
    vec_meet,
)


# ---------------------------------------------------------------------------
# Supports
# ---------------------------------------------------------------------------

def support(p: SubdirectPresentation, x) -> frozenset:
    """Block indices where x is nonzero in its chain."""
    if not p.member(x):
        raise NotInG(f"{x!r} fails the linkage constraints")
    return frozenset(
        i for i, (kind, v) in enumerate(zip(p.blocks, x)) if v != chain_zero(kind)
    )


@dataclass(frozen=True)
class SupportLattice:
    """Achievable supports of a presentation and the polar-support lattice."""

    n_blocks: int
    classes: tuple
    achievable: frozenset
    polar_supports: frozenset
    atoms: tuple

    @property
    def universe(self) -> frozenset:
        return frozenset(range(self.n_blocks))

    def interior(self, s) -> frozenset:
        """Largest achievable subset of s (union of achievable subsets)."""
        out: frozenset = frozenset()
        for a in self.achievable:
            if a <= s:
                out |= a
        return out

    def complement(self, t) -> frozenset:
        """The support of the polar of anything supported on t."""
        return self.interior(self.universe - t)

    def class_union(self, t) -> bool:
        """True iff t is a union of whole linkage classes."""
        return all(c <= t or not (c & t) for c in self.classes)


def support_lattice(p: SubdirectPresentation) -> SupportLattice:
    """Enumerate achievable and polar supports from the linkage structure.

    A subset S is achievable iff every linkage class is either contained in S
    or meets S only in blocks of depth >= 2 (where a tail-only nonzero value
    keeps the leading coordinate at zero).
    """
    n = len(p.blocks)
    classes = tuple(frozenset(c) for c in p.linkage)

    def deep(i: int) -> bool:
        return isinstance(p.blocks[i], ZLex) and p.blocks[i].depth >= 2

    achievable = []
    for r in range(n + 1):
        for combo in combinations(range(n), r):
            s = frozenset(combo)
            if all(c <= s or all(deep(i) for i in s & c) for c in classes):
                achievable.append(s)
    achievable = frozenset(achievable)
    universe = frozenset(range(n))

    def interior(s):
        out: frozenset = frozenset()
        for a in achievable:
            if a <= s:
                out |= a
        return out

    polar = frozenset(interior(universe - s) for s in achievable)
    nonzero = [t for t in polar if t]
    atoms = tuple(
        sorted(
            (t for t in nonzero if not any(o < t for o in nonzero)),
            key=sorted,
        )
    )
    return SupportLattice(n, classes, achievable, polar, atoms)


def support_witness(ga: GammaAlgebra, s: frozenset):
    """A carrier element whose support is exactly the achievable set ``s``.

    Whole classes inside ``s`` copy the unit; leftover deep blocks carry a
    minimal tail value.
    """
    p = ga.presentation
    vals = []
    for i, kind in enumerate(p.blocks):
        cls = next(frozenset(c) for c in p.linkage if i in c)
        if i not in s:
            vals.append(chain_zero(kind))
        elif cls <= s:
            vals.append(ga.one[i])
        else:
            vals.append((0,) * (kind.depth - 1) + (1,))
    x = tuple(vals)
    if not ga.contains(x) or support(p, x) != s:
        raise PreconditionFailed(f"{sorted(s)} is not an achievable support")
    return x


# ---------------------------------------------------------------------------
# Orthocompletion
# ---------------------------------------------------------------------------

@dataclass
class OrthoResult:
    """O(G) for a finite-index presentation: linkage cut along the atoms."""

    original: SubdirectPresentation
    completed: SubdirectPresentation
    atoms: tuple
    embedding: str = "coordinate-identity"


def _refine_linkage(linkage, cuts):
    """Split every linkage class along each cut set; deterministic order."""
    classes = [frozenset(c) for c in linkage]
    for t in cuts:
        nxt = []
        for c in classes:
            for part in (c & t, c - t):
                if part:
                    nxt.append(part)
        classes = nxt
    return tuple(tuple(sorted(c)) for c in sorted(classes, key=lambda c: sorted(c)))


def orthocomplete_group(p: SubdirectPresentation) -> OrthoResult:
    """O(G) as the product over atoms of the atom-projections of G.

    Each projection keeps the atom's blocks with the linkage restricted to
    them, so the result is the same block list with every class cut along
    every atom.
    """
    if not isinstance(p, SubdirectPresentation):
        raise NotFiniteIndex(f"expected a finite presentation, got {type(p).__name__}")
    lat = support_lattice(p)
    covered = frozenset().union(*lat.atoms) if lat.atoms else frozenset()
    if covered != lat.universe or any(
        a & b for a, b in combinations(lat.atoms, 2)
    ):
        raise NotFiniteIndex("polar-support atoms do not partition the blocks")
    refined = _refine_linkage(p.linkage, lat.atoms)
    completed = SubdirectPresentation(p.blocks, refined, p.unit)
    return OrthoResult(original=p, completed=completed, atoms=lat.atoms)


@dataclass
class OrthocompletionResult:
    algebra: object
    embedding: str
    group: OrthoResult | None = None


def orthocompletion(a) -> OrthocompletionResult:
    """O(A): the algebra itself for finite A, Gamma(O(G), u) for symbolic A."""
    if isinstance(a, FinitePMV):
        return OrthocompletionResult(algebra=a, embedding="identity")
    res = orthocomplete_group(a.presentation)
    return OrthocompletionResult(
        algebra=GammaAlgebra(res.completed), embedding="coordinate-identity", group=res
    )


def strong_unit_check(o: OrthoResult, n_bound: int = 64, samples: int = 200, seed: int = 0):
    """Exhibit n with x <= n*u for sampled x of O(G)."""
    p = o.completed
    rng = random.Random(seed)
    entries, inconclusive = [], []
    for _ in range(samples):
        x = p.sample(rng)
        found = None
        for n in range(1, n_bound + 1):
            nu = tuple(chain_scale(k, n, u) for k, u in zip(p.blocks, p.unit))
            if vec_leq(p.blocks, x, nu):
                found = n
                break
        if found is None:
            inconclusive.append(x)
        else:
            entries.append((x, found))
    status = "pass" if not inconclusive else "inconclusive"
    return {"status": status, "entries": entries, "inconclusive": inconclusive, "seed": seed}


# ---------------------------------------------------------------------------
# Largeness (essential extensions)
# ---------------------------------------------------------------------------

@dataclass
class LargenessCertificate:
    """Per-element witnesses (n, x) with 0 < x <= n.y and x in the subalgebra."""

    status: str  # pass | fail | inconclusive
    entries: list = field(default_factory=list)  # (y, n, x)
    failures: list = field(default_factory=list)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _is_int_in_rational(sub: GammaAlgebra, sup: GammaAlgebra) -> bool:
    return (
        all(isinstance(k, ZLex) and k.depth == 1 for k in sub.blocks)
        and all(isinstance(k, Q) for k in sup.blocks)
        and len(sub.blocks) == len(sup.blocks)
        and tuple(u[0] for u in sub.one) == tuple(sup.one)
    )


def sub_contains(sub, sup, y) -> bool:
    """Membership of a sup-element in the subalgebra."""
    if isinstance(sup, FinitePMV):
        return y in sub
    if sub is sup:
        return True
    if _is_int_in_rational(sub, sup):
        return all(v.denominator == 1 for v in y)
    return sub.contains(y)


def _gamma_small_member(sub: GammaAlgebra, z):
    """A nonzero subalgebra element below z > 0, by per-class witness rules."""
    blocks = sub.blocks
    n = len(blocks)

    def only(lam, v):
        return tuple(v if i == lam else chain_zero(blocks[i]) for i in range(n))

    candidates = []
    for lam, kind in enumerate(blocks):
        zl = z[lam]
        if chain_cmp(kind, chain_zero(kind), zl) >= 0:
            continue
        if isinstance(kind, ZLex):
            if zl[0] == 0:
                candidates.append(only(lam, zl))
            elif kind.depth >= 2:
                candidates.append(only(lam, (0,) * (kind.depth - 1) + (1,)))
            else:
                cls = next(c for c in sub.presentation.linkage if lam in c)
                height_one = tuple(
                    (1,) + (0,) * (blocks[i].depth - 1) if i in cls else chain_zero(blocks[i])
                    for i in range(n)
                )
                candidates.append(vec_meet(blocks, height_one, sub.one))
        else:
            candidates.append(only(lam, zl if vec_leq((kind,), (zl,), (sub.one[lam],)) else sub.one[lam]))
    for x in candidates:
        if x != sub.zero and sub.contains(x) and vec_leq(blocks, x, z):
            return x
    return None


def is_large(sub, sup, n_bound: int = 16, samples: int = 200, seed: int = 0, radius: int = 8):
    """Certify sub as a large subalgebra of sup.

    Finite algebras are checked exhaustively (``sub`` is a set of carrier
    indices); symbolic ones on seeded box samples.  An exhausted bound is
    inconclusive for symbolic pairs, a genuine failure for finite ones.
    """
    if isinstance(sup, FinitePMV):
        members = set(range(sup.size)) if sub is sup else set(sub)
        cert = LargenessCertificate(status="pass")
        for y in sup.elements():
            if y == sup.zero:
                continue
            found = None
            for n in range(1, sup.size + 2):
                z = sup.nfold(n, y)
                for x in sorted(members):
                    if x != sup.zero and sup.leq(x, z):
                        found = (n, x)
                        break
                if found:
                    break
            if found:
                cert.entries.append((y, found[0], found[1]))
            else:
                cert.failures.append(y)
                cert.status = "fail"
        return cert

    rng = random.Random(seed)
    cert = LargenessCertificate(status="pass", seed=seed)
    int_in_q = _is_int_in_rational(sub, sup) if isinstance(sub, GammaAlgebra) else False
    for _ in range(samples):
        y = sup.sample_carrier(rng, radius)
        if y == sup.zero:
            continue
        found = None
        for n in range(1, n_bound + 1):
            z = sup.nfold(n, y)
            if int_in_q:
                for lam, v in enumerate(z):
                    if v >= 1:
                        x = tuple(
                            __import__("fractions").Fraction(1 if i == lam else 0)
                            for i in range(len(z))
                        )
                        found = (n, x)
                        break
            else:
                x = _gamma_small_member(sub, z)
                if x is not None:
                    found = (n, x)
            if found:
                break
        if found:
            n, x = found
            if not (sub_contains(sub, sup, x) and vec_leq(sup.blocks, x, sup.nfold(n, y))):
                cert.failures.append(y)
                cert.status = "fail"
            else:
                cert.entries.append((y, n, x))
        else:
            cert.failures.append(y)
            if cert.status == "pass":
                cert.status = "inconclusive"
    return cert


# ---------------------------------------------------------------------------
# Orthocompleteness and least upper bounds
# ---------------------------------------------------------------------------

def _finite_disjoint_families(m: FinitePMV, max_size: int = 8):
    nonzero = [x for x in m.elements() if x != m.zero]
    families = [[]]
    for x in nonzero:
        families += [
            f + [x]
            for f in families
            if len(f) < max_size and all(m.meet(x, y) == m.zero for y in f)
        ]
    return [f for f in families if f]


def is_orthocomplete(m, family_count: int = 50, max_family: int = 8, radius: int = 8, seed: int = 0):
    """Strong projectability plus lub existence for tested disjoint families."""
    from .summands import classify_projectability

    proj = classify_projectability(m)
    diagnostics = {"strongly_projectable": proj.strongly_projectable, "families": 0}
    if not proj.strongly_projectable:
        diagnostics["witness"] = proj.witness
        return False, diagnostics
    if isinstance(m, FinitePMV):
        for fam in _finite_disjoint_families(m, max_family):
            j = m.zero
            for x in fam:
                j = m.join(j, x)
            if any(
                all(m.leq(x, v) for x in fam) and not m.leq(j, v) for v in m.elements()
            ):
                diagnostics["witness"] = fam
                return False, diagnostics
            diagnostics["families"] += 1
        return True, diagnostics
    lat = support_lattice(m.presentation)
    rng = random.Random(seed)
    atoms = list(lat.atoms)
    for _ in range(family_count):
        chosen = [t for t in atoms if rng.random() < 0.75][:max_family]
        if not chosen:
            continue
        fam = [support_witness(m, t) for t in chosen]
        j = m.zero
        for x in fam:
            j = vec_join(m.blocks, j, x)
        if not m.contains(j):
            diagnostics["witness"] = fam
            return False, diagnostics
        diagnostics["families"] += 1
    return True, diagnostics


@dataclass
class LubReport:
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def lub_preservation_check(
    sub, sup, max_set: int = 4, samples: int = 200, seed: int = 0, radius: int = 8,
    denom_bound: int = 12,
) -> LubReport:
    """Least upper bounds computed in the subalgebra survive in the extension.

    Requires the pair to be large first (raises :class:`NotLarge` otherwise).
    """
    cert = is_large(sub, sup, seed=seed)
    if cert.status == "fail":
        raise NotLarge("subalgebra is not large in the extension")
    report = LubReport(checked=0)
    if isinstance(sup, FinitePMV):
        members = sorted(set(range(sup.size)) if sub is sup else set(sub))
        for r in range(1, max_set + 1):
            for s in combinations(members, r):
                ubs_sub = [v for v in members if all(sup.leq(x, v) for x in s)]
                least_sub = [v for v in ubs_sub if all(sup.leq(v, w) for w in ubs_sub)]
                if not least_sub:
                    continue
                lub_sub = least_sub[0]
                ubs_sup = [v for v in sup.elements() if all(sup.leq(x, v) for x in s)]
                least_sup = [v for v in ubs_sup if all(sup.leq(v, w) for w in ubs_sup)]
                report.checked += 1
                if not least_sup or least_sup[0] != lub_sub:
                    report.violations.append((s, lub_sub, least_sup))
        return report
    rng = random.Random(seed)
    for _ in range(samples):
        size = rng.randint(1, max_set)
        if _is_int_in_rational(sub, sup):
            import fractions

            s = [
                tuple(
                    fractions.Fraction(rng.randint(0, u.numerator)) for u in sup.one
                )
                for _ in range(size)
            ]
        else:
            s = [sub.sample_carrier(rng, radius, denom_bound) for _ in range(size)]
        j = s[0]
        for x in s[1:]:
            j = vec_join(sup.blocks, j, x)
        report.checked += 1
        # The coordinatewise join is the lub in the full product; it is the
        # lub in both algebras provided both contain it.
        if not (sub_contains(sub, sup, j) and sup.contains(j)):
            report.violations.append((s, j))
    return report


# ---------------------------------------------------------------------------
# Polar correspondence between a large subalgebra and its extension
# ---------------------------------------------------------------------------

@dataclass
class PolarCorrespondence:
    rho_sub: list
    rho_sup: list
    pairs: list  # (sub polar, sup polar)


def _finite_rho(m: FinitePMV, members):
    """Polar subsets of the subalgebra with carrier ``members``."""
    members = sorted(members)

    def pol(xs):
        return tuple(
            y for y in members if all(m.meet(x, y) == m.zero for x in xs)
        )

    singles = {pol([x]) for x in members}
    rho = {tuple(members)}
    frontier = set(singles)
    while frontier:
        rho |= frontier
        nxt = set()
        for a in frontier:
            for b in singles:
                c = tuple(v for v in a if v in set(b))
                if c not in rho:
                    nxt.add(c)
        frontier = nxt
    return sorted(rho, key=lambda s: (len(s), s)), pol


def polar_correspondence(sub, sup) -> PolarCorrespondence:
    """Verify I -> I n M1 and J -> (J^bot_M1)^bot_M2 are inverse lattice
    isomorphisms between the polar lattices of the extension and the
    subalgebra."""
    cert = is_large(sub, sup)
    if cert.status == "fail":
        raise NotLarge("subalgebra is not large in the extension")
    if isinstance(sup, FinitePMV):
        sub_members = sorted(set(range(sup.size)) if sub is sup else set(sub))
        sup_members = list(sup.elements())
        rho_a, pol_a = _finite_rho(sup, sub_members)
        rho_b, pol_b = _finite_rho(sup, sup_members)

        def phi(i):
            return tuple(x for x in i if x in set(sub_members))

        def psi(j):
            inside = pol_a(j)
            return pol_b(inside)

        for i in rho_b:
            if psi(phi(i)) != i:
                raise CorrespondenceFailure(f"Psi(Phi(I)) != I at {i}")
            if phi(i) not in set(map(tuple, rho_a)):
                raise CorrespondenceFailure(f"Phi image not a sub polar at {i}")
        for j in rho_a:
            if phi(psi(j)) != j:
                raise CorrespondenceFailure(f"Phi(Psi(J)) != J at {j}")
        for i1, i2 in product(rho_b, rho_b):
            if (set(i1) <= set(i2)) != (set(phi(i1)) <= set(phi(i2))):
                raise CorrespondenceFailure("order not preserved")
        pairs = [(phi(i), i) for i in rho_b]
        return PolarCorrespondence(rho_a, rho_b, pairs)

    lat_a = support_lattice(sub.presentation)
    lat_b = support_lattice(sup.presentation)
    universe = lat_a.universe
    rho_a = sorted(lat_a.polar_supports, key=sorted)
    rho_b = sorted(lat_b.polar_supports, key=sorted)

    def phi(t):
        return lat_a.interior(t)

    def psi(s):
        return lat_b.interior(universe - lat_a.interior(universe - s))

    for t in rho_b:
        if psi(phi(t)) != t:
            raise CorrespondenceFailure(f"Psi(Phi(.)) != id at support {sorted(t)}")
        if phi(t) not in lat_a.polar_supports:
            raise CorrespondenceFailure(f"Phi image not a polar support at {sorted(t)}")
    for s in rho_a:
        if phi(psi(s)) != s:
            raise CorrespondenceFailure(f"Phi(Psi(.)) != id at support {sorted(s)}")
    for t1, t2 in product(rho_b, rho_b):
        if (t1 <= t2) != (phi(t1) <= phi(t2)):
            raise CorrespondenceFailure("order not preserved")
    pairs = [(phi(t), t) for t in rho_b]
    return PolarCorrespondence(rho_a, rho_b, pairs)


# ---------------------------------------------------------------------------
# Minimal strongly projectable essential extension
# ---------------------------------------------------------------------------

@dataclass
class ExtensionResult:
    algebra: object
    completion: object
    iterations: int
    status: str = "ok"


def minimal_projectable_extension(a, max_iter: int = 64) -> ExtensionResult:
    """The least strongly projectable algebra between A and O(A).

    Computed by a fixed-point closure: repeatedly adjoin, for every polar
    ideal of the current algebra, the Boolean witness that its double polar
    has inside O(A); adjoining a Boolean element of O(A) cuts the linkage
    classes along its support.
    """
    from .summands import classify_projectability

    if isinstance(a, FinitePMV):
        proj = classify_projectability(a)
        if not proj.strongly_projectable:
            raise PreconditionFailed("finite input unexpectedly not strongly projectable")
        return ExtensionResult(algebra=a, completion=a, iterations=0)

    o_res = orthocomplete_group(a.presentation)
    lat_o = support_lattice(o_res.completed)
    universe = lat_o.universe
    linkage = tuple(tuple(sorted(c)) for c in a.presentation.linkage)
    iterations = 0
    status = "ok"
    while True:
        if iterations >= max_iter:
            status = "inconclusive"
            break
        cur = SubdirectPresentation(a.presentation.blocks, linkage, a.presentation.unit)
        lat_d = support_lattice(cur)
        cuts = []
        for s in lat_d.polar_supports:
            t = lat_o.interior(universe - lat_d.interior(universe - s))
            if not lat_o.class_union(t):
                raise CorrespondenceFailure(
                    f"double polar support {sorted(t)} has no Boolean witness in O(A)"
                )
            cuts.append(t)
        refined = _refine_linkage(linkage, cuts)
        iterations += 1
        if refined == linkage:
            break
        linkage = refined
    d = GammaAlgebra(SubdirectPresentation(a.presentation.blocks, linkage, a.presentation.unit))
    completion = GammaAlgebra(o_res.completed)
    proj = classify_projectability(d)
    if status == "ok" and not proj.strongly_projectable:
        raise PreconditionFailed("closure terminated on a non-projectable algebra")
    if not (
        d.presentation.refines(a.presentation)
        and completion.presentation.refines(d.presentation)
    ):
        raise CorrespondenceFailure("result is not sandwiched between A and O(A)")
    return ExtensionResult(algebra=d, completion=completion, iterations=iterations, status=status)
