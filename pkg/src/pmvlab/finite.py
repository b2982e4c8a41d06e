"""Finite pseudo MV-algebras: tables, axiom checking, derived operations.

A finite algebra is a carrier ``0..size-1`` with an explicit ``oplus`` table
and two negation tables.  All derived operations (``odot``, lattice join and
meet, relative subtractions, ``n.x`` and ``x^n``) are computed from the
primitives exactly as the defining identities state, so the same code serves
any object exposing ``oplus``/``neg_minus``/``neg_tilde``/``zero``/``one``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Iterable, Sequence

from .errors import (
    InternalInconsistency,
    MalformedTable,
    NoSplit,
    NotEnumerable,
    OutOfCarrier,
    PMVError,
    PreconditionFailed,
)

# Tags accepted by eval_term.
TERM_TAGS = (
    "oplus",
    "odot",
    "join",
    "meet",
    "ominus_minus",
    "ominus_tilde",
    "nfold",
    "power",
    "neg_minus",
    "neg_tilde",
)


class TermOps:
    """Derived operations shared by finite tables and symbolic intervals.

    Subclasses provide ``oplus``, ``neg_minus``, ``neg_tilde`` and the
    constants ``zero`` and ``one``.
    """

    def odot(self, x, y):
        # y (.) x = (x^- (+) y^-)^~, read off with arguments in order.
        return self.neg_tilde(self.oplus(self.neg_minus(y), self.neg_minus(x)))

    def join(self, x, y):
        # x v y = x (+) (x^~ (.) y), one of the four equal (A6) expressions.
        return self.oplus(x, self.odot(self.neg_tilde(x), y))

    def meet(self, x, y):
        # x ^ y = x (.) (x^- (+) y), the left (A7) expression.
        return self.odot(x, self.oplus(self.neg_minus(x), y))

    def ominus_minus(self, x, y):
        """Relative subtraction x (.) y^-."""
        return self.odot(x, self.neg_minus(y))

    def ominus_tilde(self, y, x):
        """Relative subtraction y^~ (.) x."""
        return self.odot(self.neg_tilde(y), x)

    def nfold(self, n: int, x):
        """n.x = (n-1).x (+) x with 0.x = 0 and 1.x = x."""
        if n < 0:
            raise PreconditionFailed(f"n must be nonnegative, got {n}")
        acc = self.zero
        for _ in range(n):
            acc = self.oplus(acc, x)
        return acc

    def power(self, x, n: int):
        """x^n = x^(n-1) (.) x with x^0 = 1 and x^1 = x."""
        if n < 0:
            raise PreconditionFailed(f"n must be nonnegative, got {n}")
        acc = self.one
        for _ in range(n):
            acc = self.odot(acc, x)
        return acc

    def leq(self, x, y) -> bool:
        """x <= y iff x^- (+) y = 1."""
        return self.oplus(self.neg_minus(x), y) == self.one


@dataclass(frozen=True)
class FinitePMV(TermOps):
    """An explicit finite pseudo MV-algebra.

    The constructor checks shape only; run :func:`check_axioms` to verify the
    algebraic laws.  ``labels`` optionally names each carrier index (for
    algebras built from an interval of Z^k the labels are coordinate tuples).
    """

    size: int
    oplus_table: tuple
    neg_minus_table: tuple
    neg_tilde_table: tuple
    zero: int = 0
    one: int = -1
    labels: tuple | None = None

    def __post_init__(self):
        if self.one == -1:
            object.__setattr__(self, "one", self.size - 1)
        n = self.size
        if n <= 0:
            raise MalformedTable(f"size must be positive, got {n}")
        if len(self.oplus_table) != n or any(len(r) != n for r in self.oplus_table):
            raise MalformedTable("oplus table is not size x size")
        for vec, name in ((self.neg_minus_table, "neg_minus"), (self.neg_tilde_table, "neg_tilde")):
            if len(vec) != n:
                raise MalformedTable(f"{name} table has wrong length")
            if any(not (0 <= v < n) for v in vec):
                raise MalformedTable(f"{name} entry out of range")
        if any(not (0 <= v < n) for r in self.oplus_table for v in r):
            raise MalformedTable("oplus entry out of range")
        for idx, name in ((self.zero, "zero"), (self.one, "one")):
            if not (0 <= idx < n):
                raise MalformedTable(f"{name} index out of range")
        if self.labels is not None and len(self.labels) != n:
            raise MalformedTable("labels length does not match size")

    # -- primitives ---------------------------------------------------------

    def oplus(self, x: int, y: int) -> int:
        return self.oplus_table[x][y]

    def neg_minus(self, x: int) -> int:
        return self.neg_minus_table[x]

    def neg_tilde(self, x: int) -> int:
        return self.neg_tilde_table[x]

    def elements(self) -> range:
        return range(self.size)

    def check_element(self, x) -> None:
        if not isinstance(x, int) or not (0 <= x < self.size):
            raise OutOfCarrier(f"{x!r} is not a carrier index of a size-{self.size} algebra")

    # -- order, precomputed as bitmasks -------------------------------------

    @cached_property
    def _leq_rows(self) -> tuple:
        rows = []
        for x in self.elements():
            bits = 0
            for y in self.elements():
                if self.oplus(self.neg_minus(x), y) == self.one:
                    bits |= 1 << y
            rows.append(bits)
        return tuple(rows)

    def leq(self, x: int, y: int) -> bool:
        return bool(self._leq_rows[x] >> y & 1)

    def downset(self, a: int) -> frozenset:
        return frozenset(x for x in self.elements() if self.leq(x, a))

    def label(self, x: int):
        return self.labels[x] if self.labels is not None else x


@dataclass
class AxiomReport:
    """Outcome of an axiom check: ``passed`` iff ``violations`` is empty."""

    passed: bool
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }


def check_axioms(m: FinitePMV, first_only: bool = False) -> AxiomReport:
    """Exhaustively verify (A1)-(A8) plus the derived lattice laws.

    Reports every violation by default; ``first_only`` stops at the first.
    Shape problems raise :class:`MalformedTable` (via the constructor) and
    are never reported as axiom violations.
    """
    violations: list = []

    def bad(axiom: str, witness: tuple) -> bool:
        violations.append((axiom, witness))
        return first_only

    els = range(m.size)
    op, nm, nt = m.oplus, m.neg_minus, m.neg_tilde

    def run() -> None:
        for x in els:
            if op(x, m.zero) != x or op(m.zero, x) != x:
                if bad("A2", (x,)):
                    return
            if op(x, m.one) != m.one or op(m.one, x) != m.one:
                if bad("A3", (x,)):
                    return
            if nt(nm(x)) != x:
                if bad("A8", (x,)):
                    return
            if nm(nt(x)) != x:
                if bad("involution", (x,)):
                    return
        if nt(m.one) != m.zero or nm(m.one) != m.zero:
            if bad("A4", ()):
                return
        for x, y in product(els, els):
            if nt(op(nm(x), nm(y))) != nm(op(nt(x), nt(y))):
                if bad("A5", (x, y)):
                    return
            a6 = (
                op(x, m.odot(nt(x), y)),
                op(y, m.odot(nt(y), x)),
                op(m.odot(x, nm(y)), y),
                op(m.odot(y, nm(x)), x),
            )
            if len(set(a6)) != 1:
                if bad("A6", (x, y)):
                    return
            if m.odot(x, op(nm(x), y)) != m.odot(op(x, nt(y)), y):
                if bad("A7", (x, y)):
                    return
        for x, y, z in product(els, els, els):
            if op(x, op(y, z)) != op(op(x, y), z):
                if bad("A1", (x, y, z)):
                    return
        # Derived: the relation x <= y iff x^- (+) y = 1 must be a bounded
        # distributive lattice order whose join/meet agree with (A6)/(A7).
        leq = m.leq
        for x in els:
            if not leq(x, x):
                if bad("order-reflexive", (x,)):
                    return
            if not leq(m.zero, x) or not leq(x, m.one):
                if bad("bounds", (x,)):
                    return
        for x, y in product(els, els):
            if x != y and leq(x, y) and leq(y, x):
                if bad("order-antisymmetric", (x, y)):
                    return
            j, mt = m.join(x, y), m.meet(x, y)
            if not (leq(x, j) and leq(y, j)) or any(
                leq(x, z) and leq(y, z) and not leq(j, z) for z in els
            ):
                if bad("join-lub", (x, y)):
                    return
            if not (leq(mt, x) and leq(mt, y)) or any(
                leq(z, x) and leq(z, y) and not leq(z, mt) for z in els
            ):
                if bad("meet-glb", (x, y)):
                    return
        for x, y, z in product(els, els, els):
            if leq(x, y) and leq(y, z) and not leq(x, z):
                if bad("order-transitive", (x, y, z)):
                    return
            if m.meet(x, m.join(y, z)) != m.join(m.meet(x, y), m.meet(x, z)):
                if bad("distributivity", (x, y, z)):
                    return

    run()
    return AxiomReport(passed=not violations, violations=violations)


def eval_term(m: TermOps, tag: str, *args, n: int | None = None):
    """Evaluate a derived-operation tag on elements of ``m``.

    ``nfold`` and ``power`` take one element argument plus the keyword ``n``.
    """
    if tag not in TERM_TAGS:
        raise PMVError(f"unknown term tag {tag!r}")
    if isinstance(m, FinitePMV):
        for a in args:
            m.check_element(a)
    if tag in ("nfold", "power"):
        if n is None:
            raise PreconditionFailed(f"{tag} requires n")
        (x,) = args
        return m.nfold(n, x) if tag == "nfold" else m.power(x, n)
    return getattr(m, tag)(*args)


@dataclass(frozen=True)
class PMVElementHandle:
    """An element tagged with the algebra it belongs to."""

    algebra: Any
    value: Any

    def __post_init__(self):
        self.algebra.check_element(self.value)


def is_boolean(m: TermOps, a) -> bool:
    """True iff a (+) a = a, with the equivalent conditions cross-checked."""
    if isinstance(m, FinitePMV):
        m.check_element(a)
    idem = m.oplus(a, a) == a
    if idem:
        ok = (
            m.meet(a, m.neg_minus(a)) == m.zero
            and m.meet(a, m.neg_tilde(a)) == m.zero
            and m.neg_minus(a) == m.neg_tilde(a)
        )
        if not ok:
            raise InternalInconsistency(
                f"element {a!r} is idempotent but fails an equivalent Boolean condition"
            )
    return idem


class BooleanSkeleton:
    """B(M) with its Boolean-algebra structure (join, meet, complement)."""

    def __init__(self, algebra: TermOps, elements: Sequence):
        self.algebra = algebra
        self.elements = list(elements)
        self._verify()

    def join(self, a, b):
        return self.algebra.oplus(a, b)

    def meet(self, a, b):
        return self.algebra.meet(a, b)

    def complement(self, a):
        return self.algebra.neg_minus(a)

    def _verify(self) -> None:
        m = self.algebra
        got = set(map(self._key, self.elements))
        if self._key(m.zero) not in got or self._key(m.one) not in got:
            raise InternalInconsistency("Boolean skeleton misses 0 or 1")
        for a in self.elements:
            if self._key(self.complement(a)) not in got:
                raise InternalInconsistency(f"B(M) not closed under complement at {a!r}")
            if self.complement(self.complement(a)) != a:
                raise InternalInconsistency(f"complement not involutive at {a!r}")
            for b in self.elements:
                if self._key(self.join(a, b)) not in got or self._key(self.meet(a, b)) not in got:
                    raise InternalInconsistency(f"B(M) not closed at ({a!r}, {b!r})")

    @staticmethod
    def _key(x):
        return x if not isinstance(x, list) else tuple(x)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def boolean_skeleton(m: TermOps) -> BooleanSkeleton:
    """Enumerate B(M) = {a | a (+) a = a} with its Boolean structure."""
    if isinstance(m, FinitePMV):
        els = [a for a in m.elements() if is_boolean(m, a)]
    elif hasattr(m, "boolean_elements"):
        els = list(m.boolean_elements())
    else:
        raise NotEnumerable(f"cannot enumerate Boolean elements of {type(m).__name__}")
    return BooleanSkeleton(m, els)


@dataclass
class ClassifyResult:
    commutative: bool
    symmetric: bool
    sampled: bool = False
    witness: Any = None

    def to_json(self) -> dict:
        return {
            "commutative": self.commutative,
            "symmetric": self.symmetric,
            "sampled": self.sampled,
        }


def classify(m, samples: int = 2000, seed: int = 0) -> ClassifyResult:
    """Decide commutativity of (+) and coincidence of the two negations.

    Finite algebras are checked exhaustively; symbolic ones on seeded
    samples, with the result labeled ``sampled``.
    """
    if isinstance(m, FinitePMV):
        pairs: Iterable = product(m.elements(), m.elements())
        singles: Iterable = m.elements()
        sampled = False
    else:
        import random

        rng = random.Random(seed)
        singles = [m.sample_carrier(rng) for _ in range(samples)]
        pairs = [(m.sample_carrier(rng), m.sample_carrier(rng)) for _ in range(samples)]
        sampled = True
    commutative, symmetric, witness = True, True, None
    for x, y in pairs:
        if m.oplus(x, y) != m.oplus(y, x):
            commutative, witness = False, (x, y)
            break
    for x in singles:
        if m.neg_minus(x) != m.neg_tilde(x):
            symmetric = False
            if witness is None:
                witness = (x,)
            break
    return ClassifyResult(commutative, symmetric, sampled, witness)


def riesz_split(m: FinitePMV, x: int, a: int, b: int) -> tuple:
    """Split x <= a (+) b as x = a1 (+) b1 with a1 <= a, b1 <= b.

    Tie-break: minimal a1 in carrier-index order, then minimal b1.
    """
    for v in (x, a, b):
        m.check_element(v)
    if not m.leq(x, m.oplus(a, b)):
        raise PreconditionFailed(f"{x} is not below {a} (+) {b}")
    for a1 in m.elements():
        if not m.leq(a1, a):
            continue
        for b1 in m.elements():
            if m.leq(b1, b) and m.oplus(a1, b1) == x:
                return (a1, b1)
    raise NoSplit(f"no Riesz decomposition of {x} below ({a}, {b}); table is not MV")
