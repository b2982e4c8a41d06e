"""Machine-checkable property registry.

Each property has a stable id, an anchor naming the law it checks, and a
runner returning pass/fail/inconclusive with an optional witness.  Suites
group the properties (axioms, ideals, summands, ortho); ``all`` runs every
one.  Reports are deterministic for a fixed seed and sample count.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from itertools import combinations, product

from . import corpus
from .errors import PMVError
from .finite import FinitePMV, boolean_skeleton, check_axioms
from .ideals import (
    enumerate_ideals,
    generated_normal_ideal,
    ideal_group_correspondence,
    is_ideal,
    is_normal,
    polar,
)
from .lgroup import (
    GammaAlgebra,
    NCMatrix,
    Q,
    ZLex,
    make_finite_gamma,
    sample_chain,
    validate_presentation,
    vec_abs,
    vec_add,
    vec_join,
    vec_leq,
    vec_meet,
    vec_neg,
    vec_zero,
)
from .ortho import (
    is_large,
    is_orthocomplete,
    lub_preservation_check,
    minimal_projectable_extension,
    orthocomplete_group,
    orthocompletion,
    polar_correspondence,
    strong_unit_check,
    support_lattice,
)
from .summands import classify_projectability, summand_ideals, sum_boolean_iso


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _pmv_law_violation(m, x, y, z):
    """First (A1)-(A8) / lattice-consistency violation on a triple, or None."""
    op, nm, nt, od = m.oplus, m.neg_minus, m.neg_tilde, m.odot
    if op(op(x, y), z) != op(x, op(y, z)):
        return ("A1", (x, y, z))
    if op(x, m.zero) != x or op(m.zero, x) != x:
        return ("A2", (x,))
    if op(x, m.one) != m.one or op(m.one, x) != m.one:
        return ("A3", (x,))
    if nt(op(nm(x), nm(y))) != nm(op(nt(x), nt(y))):
        return ("A5", (x, y))
    a6 = {
        op(x, od(nt(x), y)),
        op(y, od(nt(y), x)),
        op(od(x, nm(y)), y),
        op(od(y, nm(x)), x),
    }
    if len(a6) != 1:
        return ("A6", (x, y))
    meet_expr = od(x, op(nm(x), y))
    if meet_expr != od(op(x, nt(y)), y):
        return ("A7", (x, y))
    if nt(nm(x)) != x or nm(nt(x)) != x:
        return ("A8", (x,))
    if op(x, od(nt(x), y)) != m.join(x, y):
        return ("join-vs-A6", (x, y))
    if meet_expr != m.meet(x, y):
        return ("meet-vs-A7", (x, y))
    return None


def sampled_axiom_check(ga: GammaAlgebra, samples: int, seed: int):
    """Seeded sampled (A1)-(A8) check for an interval algebra."""
    rng = random.Random(seed)
    if ga.neg_tilde(ga.one) != ga.zero or ga.neg_minus(ga.one) != ga.zero:
        return ("A4", ())
    for _ in range(samples):
        x = ga.sample_carrier(rng)
        y = ga.sample_carrier(rng)
        z = ga.sample_carrier(rng)
        hit = _pmv_law_violation(ga, x, y, z)
        if hit is not None:
            return hit
    return None


def is_commutative(m: FinitePMV) -> bool:
    return all(m.oplus(x, y) == m.oplus(y, x) for x, y in product(m.elements(), repeat=2))


def _presentations():
    return {
        name: corpus.load(name).presentation for name in corpus.SYMBOLIC_NAMES
    }


def _linkage_key(p):
    return frozenset(frozenset(c) for c in p.linkage)


# ---------------------------------------------------------------------------
# Property runners.  Each returns (status, witness, samples_used).
# ---------------------------------------------------------------------------

def prop_axioms_finite(seed: int, samples: int):
    for name, m in corpus.finite_algebras().items():
        report = check_axioms(m)
        if not report.passed:
            return ("fail", {"algebra": name, "violations": report.violations[:3]}, 0)
    return ("pass", None, 0)


def prop_axioms_symbolic(seed: int, samples: int):
    total = 0
    for name, ga in corpus.symbolic_algebras().items():
        hit = sampled_axiom_check(ga, samples, seed)
        total += samples
        if hit is not None:
            return ("fail", {"algebra": name, "violation": hit}, total)
    return ("pass", None, total)


def prop_presentations_valid(seed: int, samples: int):
    total = 0
    for name, p in _presentations().items():
        report = validate_presentation(p, samples=samples, seed=seed)
        total += samples
        if not report.valid:
            return ("fail", {"presentation": name}, total)
    return ("pass", None, total)


def prop_c3_mutations(seed: int, samples: int):
    c3 = make_finite_gamma((2,))
    survivors = []
    for i, j in product(range(c3.size), repeat=2):
        for v in range(c3.size):
            if v == c3.oplus(i, j):
                continue
            rows = [list(row) for row in c3.oplus_table]
            rows[i][j] = v
            mutant = FinitePMV(
                c3.size,
                tuple(map(tuple, rows)),
                c3.neg_minus_table,
                c3.neg_tilde_table,
            )
            if check_axioms(mutant, first_only=True).passed:
                survivors.append((i, j, v))
    if survivors:
        return ("fail", {"surviving_mutations": survivors}, 0)
    return ("pass", None, 0)


def prop_lgroup_laws(seed: int, samples: int):
    """(li)-(liii) and the weak triangle inequality, per chain kind and on a
    mixed product."""
    configs = [
        ("z", (ZLex(1),)),
        ("zlex2", (ZLex(2),)),
        ("q", (Q(),)),
        ("ncmatrix", (NCMatrix(),)),
        ("product", (ZLex(2), Q(), NCMatrix())),
    ]
    rng = random.Random(seed)
    total = 0
    for name, blocks in configs:
        zero = vec_zero(blocks)
        for _ in range(samples):
            x, y, z = (
                tuple(sample_chain(k, rng) for k in blocks) for _ in range(3)
            )
            total += 1
            add, neg, mt, jn = (
                lambda *a: vec_add(blocks, *a),
                lambda a: vec_neg(blocks, a),
                lambda a, b: vec_meet(blocks, a, b),
                lambda a, b: vec_join(blocks, a, b),
            )
            # (li): translations distribute over join and meet (both sides).
            if add(x, jn(y, z)) != jn(add(x, y), add(x, z)) or add(
                jn(y, z), x
            ) != jn(add(y, x), add(z, x)):
                return ("fail", {"law": "li-join", "config": name, "witness": (x, y, z)}, total)
            if add(x, mt(y, z)) != mt(add(x, y), add(x, z)) or add(
                mt(y, z), x
            ) != mt(add(y, x), add(z, x)):
                return ("fail", {"law": "li-meet", "config": name, "witness": (x, y, z)}, total)
            # (lii): negation is an anti-isomorphism of the lattice order.
            if neg(jn(x, y)) != mt(neg(x), neg(y)) or neg(mt(x, y)) != jn(neg(x), neg(y)):
                return ("fail", {"law": "lii", "config": name, "witness": (x, y)}, total)
            # (liii): for positive elements, x ^ (y+z) <= (x^y) + (x^z).
            xp, yp, zp = (jn(v, zero) for v in (x, y, z))
            if not vec_leq(blocks, mt(xp, add(yp, zp)), add(mt(xp, yp), mt(xp, zp))):
                return ("fail", {"law": "liii", "config": name, "witness": (xp, yp, zp)}, total)
            # Weak triangle inequality |x+y| <= |x| + |y| + |x|.
            ax, ay = vec_abs(blocks, x), vec_abs(blocks, y)
            if not vec_leq(blocks, vec_abs(blocks, add(x, y)), add(ax, ay, ax)):
                return ("fail", {"law": "wti", "config": name, "witness": (x, y)}, total)
    return ("pass", None, total)


def prop_generated_normal(seed: int, samples: int):
    """<A u B>_n equals {x : x <= a (+) b} for normal ideals A, B."""
    for name, m in corpus.finite_algebras().items():
        normal_ideals = [i for i, c in enumerate_ideals(m) if c.normal]
        for a, b in product(normal_ideals, repeat=2):
            gen = set(
                generated_normal_ideal(m, set(a.members) | set(b.members)).members
            )
            direct = {
                x
                for x in m.elements()
                if any(
                    m.leq(x, m.oplus(i, j))
                    for i in a.members
                    for j in b.members
                )
            }
            if gen != direct or not (is_ideal(m, direct) and is_normal(m, direct)):
                return (
                    "fail",
                    {"algebra": name, "A": a.members, "B": b.members,
                     "generated": sorted(gen), "direct": sorted(direct)},
                    0,
                )
    return ("pass", None, 0)


def prop_polar_basics(seed: int, samples: int):
    """Polars are ideals; bot is antitone; X <= X^botbot; X^bot = X^botbotbot."""
    for name, m in corpus.finite_algebras().items():
        subsets = [
            frozenset(c)
            for r in range(m.size + 1)
            for c in combinations(range(m.size), r)
        ]
        pol = {s: frozenset(polar(m, s).members) for s in subsets}
        for s in subsets:
            if not is_ideal(m, pol[s]):
                return ("fail", {"algebra": name, "set": sorted(s), "reason": "not an ideal"}, 0)
            if not s <= pol[pol[s]]:
                return ("fail", {"algebra": name, "set": sorted(s), "reason": "X not <= X^botbot"}, 0)
            if pol[s] != pol[pol[pol[s]]]:
                return ("fail", {"algebra": name, "set": sorted(s), "reason": "triple polar"}, 0)
        for s, t in product(subsets, repeat=2):
            if s <= t and not pol[t] <= pol[s]:
                return ("fail", {"algebra": name, "reason": "antitone", "sets": (sorted(s), sorted(t))}, 0)
    return ("pass", None, 0)


def prop_summand_structure(seed: int, samples: int):
    """Complement uniqueness, unique decomposition, Sum(M) in rho(M), Sum
    closed under intersection, unit-witness uniqueness."""
    for name, m in corpus.finite_algebras().items():
        decs = summand_ideals(m)
        ideal_sets = [frozenset(d.ideal.members) for d in decs]
        for d in decs:
            members = frozenset(d.ideal.members)
            comp = frozenset(d.complement.members)
            if comp != frozenset(polar(m, members).members):
                return ("fail", {"algebra": name, "reason": "complement != polar", "ideal": sorted(members)}, 0)
            if frozenset(polar(m, comp).members) != members:
                return ("fail", {"algebra": name, "reason": "not a polar ideal", "ideal": sorted(members)}, 0)
            for x in m.elements():
                pairs = [
                    (a, b)
                    for a in sorted(members)
                    for b in sorted(comp)
                    if m.oplus(a, b) == x
                ]
                if len(pairs) != 1:
                    return ("fail", {"algebra": name, "x": x, "pairs": pairs}, 0)
            # (vii): the unit decomposition gives the unique Boolean witness.
            if m.oplus(d.witness, d.complement_witness) != m.one:
                return ("fail", {"algebra": name, "reason": "witnesses do not sum to 1"}, 0)
            if m.downset(d.witness) != members:
                return ("fail", {"algebra": name, "reason": "witness downset mismatch"}, 0)
        for s, t in product(ideal_sets, repeat=2):
            if s & t not in ideal_sets:
                return ("fail", {"algebra": name, "reason": "Sum not closed under intersection"}, 0)
    return ("pass", None, 0)


def prop_boolean_iso(seed: int, samples: int):
    for name, m in corpus.finite_algebras().items():
        try:
            pairs = sum_boolean_iso(m)
        except PMVError as exc:
            return ("fail", {"algebra": name, "error": str(exc)}, 0)
        if name == "p6" and len(pairs) != 4:
            return ("fail", {"algebra": name, "sum_size": len(pairs)}, 0)
    return ("pass", None, 0)


def prop_sigma_projectability(seed: int, samples: int):
    """M = a^bot (+) a^botbot for every a; finite corpus algebras commute."""
    for name, m in corpus.finite_algebras().items():
        if not is_commutative(m):
            return ("fail", {"algebra": name, "reason": "not commutative"}, 0)
        if not classify_projectability(m).strongly_projectable:
            return ("fail", {"algebra": name, "reason": "not strongly projectable"}, 0)
        for a in m.elements():
            i = set(polar(m, [a]).members)
            j = set(polar(m, i).members)
            if i & j != {m.zero}:
                return ("fail", {"algebra": name, "a": a, "reason": "polars overlap"}, 0)
            for x in m.elements():
                if not any(m.oplus(p, q) == x for p in i for q in j):
                    return ("fail", {"algebra": name, "a": a, "x": x}, 0)
    return ("pass", None, 0)


def _finite_large_pairs():
    """(name, sub-carrier, algebra) for the finite corpus: B(M) in M and M in M."""
    out = []
    for name, m in corpus.finite_algebras().items():
        out.append((f"{name}:self", frozenset(m.elements()), m))
        out.append((f"{name}:boolean", frozenset(boolean_skeleton(m)), m))
    return out


def prop_lub_preservation(seed: int, samples: int):
    for name, sub, m in _finite_large_pairs():
        report = lub_preservation_check(sub, m, max_set=4)
        if not report.ok:
            return ("fail", {"pair": name, "violations": report.violations[:3]}, report.checked)
    z10, q10 = corpus.load("gamma_z10"), corpus.load("gamma_q10")
    report = lub_preservation_check(z10, q10, samples=samples, seed=seed, denom_bound=12)
    if not report.ok:
        return ("fail", {"pair": "gamma_z10<gamma_q10", "violations": report.violations[:3]}, report.checked)
    lexp = corpus.load("lexp")
    o = orthocompletion(lexp).algebra
    report = lub_preservation_check(lexp, o, samples=samples, seed=seed)
    if not report.ok:
        return ("fail", {"pair": "lexp<O(lexp)", "violations": report.violations[:3]}, report.checked)
    return ("pass", None, samples)


def prop_orthocompletion(seed: int, samples: int):
    lexp = corpus.load("lexp")
    o = orthocompletion(lexp)
    if not classify_projectability(o.algebra).strongly_projectable:
        return ("fail", {"reason": "O(lexp) not strongly projectable"}, 0)
    cert = is_large(lexp, o.algebra, n_bound=16, samples=samples, seed=seed, radius=8)
    if not cert.ok:
        return ("fail", {"reason": "lexp not certified large in O(lexp)", "status": cert.status}, samples)
    ok, diag = is_orthocomplete(o.algebra, seed=seed)
    if not ok:
        return ("fail", {"reason": "O(lexp) not orthocomplete", "diag": str(diag)}, 0)
    for name, m in corpus.finite_algebras().items():
        res = orthocompletion(m)
        if res.algebra is not m:
            return ("fail", {"algebra": name, "reason": "finite orthocompletion not identity"}, 0)
        ok, diag = is_orthocomplete(m)
        if not ok:
            return ("fail", {"algebra": name, "reason": "finite algebra not orthocomplete"}, 0)
    for name, p in _presentations().items():
        once = orthocomplete_group(p).completed
        twice = orthocomplete_group(once).completed
        if _linkage_key(once) != _linkage_key(twice):
            return ("fail", {"presentation": name, "reason": "O not idempotent"}, 0)
    return ("pass", None, samples)


def prop_strong_units(seed: int, samples: int):
    for name, p in _presentations().items():
        o = orthocomplete_group(p)
        res = strong_unit_check(o, n_bound=64, samples=samples, seed=seed)
        if res["status"] != "pass":
            return (
                "fail" if res["status"] == "fail" else "inconclusive",
                {"presentation": name, "unwitnessed": res["inconclusive"][:3]},
                samples,
            )
    return ("pass", None, samples)


def prop_polar_correspondence(seed: int, samples: int):
    lexp = corpus.load("lexp")
    o = orthocompletion(lexp).algebra
    corr = polar_correspondence(lexp, o)
    if len(corr.rho_sub) != 4 or len(corr.rho_sup) != 4:
        return ("fail", {"pair": "lexp<O(lexp)", "sizes": (len(corr.rho_sub), len(corr.rho_sup))}, 0)
    for name, sub, m in _finite_large_pairs():
        try:
            polar_correspondence(sub, m)
        except PMVError as exc:
            return ("fail", {"pair": name, "error": str(exc)}, 0)
    return ("pass", None, 0)


def prop_minimal_extension(seed: int, samples: int):
    p6 = corpus.load("p6")
    res = minimal_projectable_extension(p6)
    if res.algebra is not p6 or res.status != "ok":
        return ("fail", {"case": "p6", "reason": "extension is not the algebra itself"}, 0)
    lexp = corpus.load("lexp")
    res = minimal_projectable_extension(lexp)
    o = orthocomplete_group(lexp.presentation).completed
    if res.status != "ok" or _linkage_key(res.algebra.presentation) != _linkage_key(o):
        return ("fail", {"case": "lexp", "reason": "extension != O(lexp)"}, 0)
    if not classify_projectability(res.algebra).strongly_projectable:
        return ("fail", {"case": "lexp", "reason": "result not strongly projectable"}, 0)
    if not (
        res.algebra.presentation.refines(lexp.presentation)
        and o.refines(res.algebra.presentation)
    ):
        return ("fail", {"case": "lexp", "reason": "not sandwiched"}, 0)
    # Minimality for lexp: the only intermediate linkages are the two
    # endpoints; the coarse one is not strongly projectable.
    if classify_projectability(lexp).strongly_projectable:
        return ("fail", {"case": "lexp", "reason": "lexp unexpectedly projectable"}, 0)
    for name, p in _presentations().items():
        ga = GammaAlgebra(p)
        res = minimal_projectable_extension(ga)
        if res.status != "ok" or not classify_projectability(res.algebra).strongly_projectable:
            return ("fail", {"case": name, "reason": "bad extension"}, 0)
    return ("pass", None, 0)


def prop_group_correspondence(seed: int, samples: int):
    for units in ((2,), (1, 2), (1, 1, 1)):
        try:
            table = ideal_group_correspondence(units, box_cap=2)
        except PMVError as exc:
            return ("fail", {"units": units, "error": str(exc)}, 0)
        if len(table.pairs) != 2 ** len(units):
            return ("fail", {"units": units, "count": len(table.pairs)}, 0)
    return ("pass", None, 0)


def prop_support_lattices(seed: int, samples: int):
    """Frozen support-lattice facts for the bundled presentations."""
    pres = _presentations()
    lexp = support_lattice(pres["lexp"])
    if len(lexp.achievable) != 4 or set(lexp.atoms) != {frozenset({0}), frozenset({1})}:
        return ("fail", {"case": "lexp", "atoms": [sorted(a) for a in lexp.atoms]}, 0)
    diag = support_lattice(pres["diag"])
    if diag.achievable != frozenset({frozenset(), frozenset({0, 1})}) or diag.atoms != (
        frozenset({0, 1}),
    ):
        return ("fail", {"case": "diag"}, 0)
    if _linkage_key(orthocomplete_group(pres["diag"]).completed) != _linkage_key(pres["diag"]):
        return ("fail", {"case": "diag", "reason": "O(DIAG) changed"}, 0)
    o_lexp = orthocomplete_group(pres["lexp"]).completed
    if _linkage_key(o_lexp) != frozenset({frozenset({0}), frozenset({1})}):
        return ("fail", {"case": "lexp", "reason": "O(LEXP) linkage"}, 0)
    return ("pass", None, 0)


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Property:
    property_id: str
    suite: str
    anchor: str
    runner: object
    default_samples: int


PROPERTIES = (
    Property("axioms.finite-corpus", "axioms",
             "axioms (A1)-(A8) with derived lattice laws, exhaustive", prop_axioms_finite, 0),
    Property("axioms.symbolic-corpus", "axioms",
             "axioms (A1)-(A8) on interval algebras, seeded samples", prop_axioms_symbolic, 10_000),
    Property("axioms.presentation-closure", "axioms",
             "presented subgroups closed under +, -, join, meet", prop_presentations_valid, 10_000),
    Property("axioms.c3-mutation-kill", "axioms",
             "every single-cell mutation of the 3-chain table breaks a law", prop_c3_mutations, 0),
    Property("axioms.lgroup-laws", "axioms",
             "lattice-group laws (li)-(liii) and the weak triangle inequality", prop_lgroup_laws, 10_000),
    Property("ideals.generated-normal", "ideals",
             "generated normal ideal of a union equals the oplus down-set", prop_generated_normal, 0),
    Property("ideals.polar-basics", "ideals",
             "polars are ideals, antitone, X <= X^botbot, X^bot = X^botbotbot", prop_polar_basics, 0),
    Property("ideals.group-correspondence", "ideals",
             "normal ideals of Gamma(Z^k, u) match l-ideals of Z^k", prop_group_correspondence, 0),
    Property("summands.structure", "summands",
             "summand complements are polars with unique decompositions", prop_summand_structure, 0),
    Property("summands.boolean-iso", "summands",
             "a -> downset(a) is a Boolean isomorphism onto the summand lattice", prop_boolean_iso, 0),
    Property("summands.sigma-projectability", "summands",
             "M = a^bot (+) a^botbot; finite algebras are commutative", prop_sigma_projectability, 0),
    Property("ortho.support-lattices", "ortho",
             "achievable supports, polar supports, and atoms of the presentations", prop_support_lattices, 0),
    Property("ortho.completion", "ortho",
             "orthocompletion is strongly projectable, large, and idempotent", prop_orthocompletion, 200),
    Property("ortho.strong-unit", "ortho",
             "the carried unit stays a strong unit after orthocompletion", prop_strong_units, 100),
    Property("ortho.lub-preservation", "ortho",
             "least upper bounds in a large subalgebra survive in the extension", prop_lub_preservation, 200),
    Property("ortho.polar-correspondence", "ortho",
             "polar lattices of a large pair are isomorphic via Phi and Psi", prop_polar_correspondence, 0),
    Property("ortho.minimal-extension", "ortho",
             "least strongly projectable algebra between A and its orthocompletion", prop_minimal_extension, 0),
)

SUITES = ("axioms", "ideals", "summands", "ortho", "all")


@dataclass
class PropertyRecord:
    property_id: str
    anchor: str
    status: str
    witness: object
    samples: int
    seed: int
    runtime: float

    def to_json(self) -> dict:
        out = {
            "property": self.property_id,
            "anchor": self.anchor,
            "status": self.status,
            "samples": self.samples,
            "seed": self.seed,
            "runtime": round(self.runtime, 3),
        }
        if self.witness is not None:
            out["witness"] = repr(self.witness)
        return out


@dataclass
class VerifyReport:
    suite: str
    records: list

    @property
    def exit_code(self) -> int:
        if any(r.status == "fail" for r in self.records):
            return 1
        if any(r.status == "inconclusive" for r in self.records):
            return 3
        return 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "status": ["pass", "fail", None, "inconclusive"][self.exit_code],
            "properties": [r.to_json() for r in self.records],
        }


def worker_count(default: int = 4) -> int:
    raw = os.environ.get("PMVLAB_WORKERS", "")
    try:
        n = int(raw)
    except ValueError:
        return default
    return max(1, n)


def run_suite(suite: str = "all", seed: int = 0, samples: int | None = None) -> VerifyReport:
    """Run one suite deterministically; PMVLAB_WORKERS sets the thread count."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    chosen = [p for p in PROPERTIES if suite in ("all", p.suite)]

    def run_one(prop: Property) -> PropertyRecord:
        n = samples if samples is not None else prop.default_samples
        start = time.perf_counter()
        try:
            status, witness, used = prop.runner(seed, n)
        except PMVError as exc:
            status, witness, used = "fail", {"error": str(exc)}, 0
        return PropertyRecord(
            prop.property_id, prop.anchor, status, witness, used, seed,
            time.perf_counter() - start,
        )

    workers = worker_count()
    if workers == 1 or len(chosen) == 1:
        records = [run_one(p) for p in chosen]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_one, chosen))
    return VerifyReport(suite=suite, records=records)
