"""Bundled example algebras, loadable by name."""

from __future__ import annotations

from importlib import resources

from ..documents import AlgebraDocument, parse_document

FINITE_NAMES = ("c2", "c3", "p6", "c2c2")
SYMBOLIC_NAMES = ("gamma_z10", "gamma_q10", "nc4", "diag", "lexp")
NAMES = FINITE_NAMES + SYMBOLIC_NAMES


def load_document(name: str) -> AlgebraDocument:
    data = resources.files(__name__).joinpath(f"{name}.json").read_bytes()
    return parse_document(data)


def load(name: str):
    """The corpus algebra with the given name (FinitePMV or GammaAlgebra)."""
    if name not in NAMES:
        raise KeyError(f"unknown corpus algebra {name!r}; choose from {NAMES}")
    return load_document(name).to_algebra()


def finite_algebras():
    return {name: load(name) for name in FINITE_NAMES}


def symbolic_algebras():
    return {name: load(name) for name in SYMBOLIC_NAMES}
