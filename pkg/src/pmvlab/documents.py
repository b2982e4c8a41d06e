"""JSON documents describing algebras: parsing, validation, serialization.

Three schemas, discriminated by ``kind``:

* ``finite-table``: ``{size, oplus, neg_minus, neg_tilde, zero, one}``
* ``finite-gamma``: ``{chains: [n, ...]}`` expanded to tables on demand
* ``presentation``: ``{blocks: [{type, depth?}], linkage, unit}``

All numbers are integers or rationals rendered as strings like ``"3/4"``;
floats are rejected everywhere.  Canonical form sorts keys and round-trips
byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import SchemaError
from .finite import FinitePMV
from .lgroup import (
    GammaAlgebra,
    NCMatrix,
    Q,
    SubdirectPresentation,
    ZLex,
    make_finite_gamma,
)

KINDS = ("finite-table", "finite-gamma", "presentation")


def _require(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise SchemaError(message, path)


def _int(value, path: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), "expected an integer", path)
    return value


def _rational(value, path: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad rational literal {value!r}", path) from None
    raise SchemaError("expected an integer or a 'p/q' string", path)


def _int_list(value, path: str) -> list:
    _require(isinstance(value, list), "expected an array", path)
    return [_int(v, f"{path}/{i}") for i, v in enumerate(value)]


@dataclass(frozen=True)
class AlgebraDocument:
    """A parsed, schema-validated algebra description."""

    kind: str
    payload: dict
    name: str | None = None

    def to_algebra(self):
        if self.kind == "finite-table":
            p = self.payload
            return FinitePMV(
                size=p["size"],
                oplus_table=tuple(map(tuple, p["oplus"])),
                neg_minus_table=tuple(p["neg_minus"]),
                neg_tilde_table=tuple(p["neg_tilde"]),
                zero=p["zero"],
                one=p["one"],
            )
        if self.kind == "finite-gamma":
            return make_finite_gamma(tuple(self.payload["chains"]))
        return GammaAlgebra(_payload_to_presentation(self.payload))

    def to_json(self) -> dict:
        out = {"kind": self.kind, **self.payload}
        if self.name is not None:
            out["name"] = self.name
        return out


def _parse_finite_table(doc: dict) -> dict:
    size = _int(doc.get("size"), "/size")
    _require(size >= 2, "size must be at least 2", "/size")
    oplus = doc.get("oplus")
    _require(isinstance(oplus, list) and len(oplus) == size, f"expected {size} rows", "/oplus")
    rows = []
    for i, row in enumerate(oplus):
        vals = _int_list(row, f"/oplus/{i}")
        _require(len(vals) == size, f"expected {size} entries", f"/oplus/{i}")
        for j, v in enumerate(vals):
            _require(0 <= v < size, "entry out of range", f"/oplus/{i}/{j}")
        rows.append(vals)
    unary = {}
    for key in ("neg_minus", "neg_tilde"):
        vals = _int_list(doc.get(key), f"/{key}")
        _require(len(vals) == size, f"expected {size} entries", f"/{key}")
        for j, v in enumerate(vals):
            _require(0 <= v < size, "entry out of range", f"/{key}/{j}")
        unary[key] = vals
    zero = _int(doc.get("zero"), "/zero")
    one = _int(doc.get("one"), "/one")
    _require(0 <= zero < size, "out of range", "/zero")
    _require(0 <= one < size, "out of range", "/one")
    return {
        "size": size,
        "oplus": rows,
        "neg_minus": unary["neg_minus"],
        "neg_tilde": unary["neg_tilde"],
        "zero": zero,
        "one": one,
    }


def _parse_finite_gamma(doc: dict) -> dict:
    chains = _int_list(doc.get("chains"), "/chains")
    _require(bool(chains), "at least one chain required", "/chains")
    for i, n in enumerate(chains):
        _require(n >= 1, "chain unit must be positive", f"/chains/{i}")
    return {"chains": chains}


def _parse_block(b, path: str):
    _require(isinstance(b, dict), "expected an object", path)
    t = b.get("type")
    if t == "zlex":
        depth = _int(b.get("depth", 1), f"{path}/depth")
        _require(depth >= 1, "depth must be positive", f"{path}/depth")
        return {"type": "zlex", "depth": depth}
    if t == "q":
        return {"type": "q"}
    if t == "ncmatrix":
        return {"type": "ncmatrix"}
    raise SchemaError(f"unknown block type {t!r}", f"{path}/type")


def _parse_unit_value(block: dict, v, path: str):
    if block["type"] == "zlex":
        vals = _int_list(v, path)
        _require(len(vals) == block["depth"], f"expected {block['depth']} coordinates", path)
        return vals
    if block["type"] == "q":
        return str(_rational(v, path))
    _require(isinstance(v, list) and len(v) == 2, "expected [a, b]", path)
    return [str(_rational(v[0], f"{path}/0")), str(_rational(v[1], f"{path}/1"))]


def _parse_presentation(doc: dict) -> dict:
    raw_blocks = doc.get("blocks")
    _require(isinstance(raw_blocks, list) and raw_blocks, "expected a nonempty array", "/blocks")
    blocks = [_parse_block(b, f"/blocks/{i}") for i, b in enumerate(raw_blocks)]
    linkage = doc.get("linkage")
    _require(isinstance(linkage, list), "expected an array", "/linkage")
    classes = [_int_list(c, f"/linkage/{i}") for i, c in enumerate(linkage)]
    for i, c in enumerate(classes):
        for j, v in enumerate(c):
            _require(0 <= v < len(blocks), "block index out of range", f"/linkage/{i}/{j}")
    unit = doc.get("unit")
    _require(isinstance(unit, list) and len(unit) == len(blocks), "expected one value per block", "/unit")
    unit = [_parse_unit_value(b, v, f"/unit/{i}") for i, (b, v) in enumerate(zip(blocks, unit))]
    return {"blocks": blocks, "linkage": classes, "unit": unit}


def _payload_to_presentation(payload: dict) -> SubdirectPresentation:
    kinds = []
    for b in payload["blocks"]:
        if b["type"] == "zlex":
            kinds.append(ZLex(b["depth"]))
        elif b["type"] == "q":
            kinds.append(Q())
        else:
            kinds.append(NCMatrix())
    unit = []
    for kind, v in zip(kinds, payload["unit"]):
        if isinstance(kind, ZLex):
            unit.append(tuple(v))
        elif isinstance(kind, Q):
            unit.append(Fraction(v))
        else:
            unit.append((Fraction(v[0]), Fraction(v[1])))
    return SubdirectPresentation(
        tuple(kinds), tuple(tuple(c) for c in payload["linkage"]), tuple(unit)
    )


def presentation_document(p: SubdirectPresentation, name: str | None = None) -> AlgebraDocument:
    """Serialize a presentation back into a document."""
    blocks, unit = [], []
    for kind, u in zip(p.blocks, p.unit):
        if isinstance(kind, ZLex):
            blocks.append({"type": "zlex", "depth": kind.depth})
            unit.append(list(u))
        elif isinstance(kind, Q):
            blocks.append({"type": "q"})
            unit.append(str(u))
        else:
            blocks.append({"type": "ncmatrix"})
            unit.append([str(u[0]), str(u[1])])
    payload = {
        "blocks": blocks,
        "linkage": [list(c) for c in p.linkage],
        "unit": unit,
    }
    return AlgebraDocument("presentation", payload, name)


def finite_table_document(m: FinitePMV, name: str | None = None) -> AlgebraDocument:
    payload = {
        "size": m.size,
        "oplus": [list(row) for row in m.oplus_table],
        "neg_minus": list(m.neg_minus_table),
        "neg_tilde": list(m.neg_tilde_table),
        "zero": m.zero,
        "one": m.one,
    }
    return AlgebraDocument("finite-table", payload, name)


def _reject_floats(value, path: str = "") -> None:
    if isinstance(value, float):
        raise SchemaError("floating point values are not allowed", path or "/")
    if isinstance(value, dict):
        for k, v in value.items():
            _reject_floats(v, f"{path}/{k}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _reject_floats(v, f"{path}/{i}")


def parse_document(data) -> AlgebraDocument:
    """Parse bytes/str/dict into a validated :class:`AlgebraDocument`."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "/") from None
    _require(isinstance(data, dict), "top-level value must be an object", "/")
    _reject_floats(data)
    kind = data.get("kind")
    _require(kind in KINDS, f"kind must be one of {KINDS}", "/kind")
    name = data.get("name")
    if name is not None:
        _require(isinstance(name, str), "expected a string", "/name")
    if kind == "finite-table":
        payload = _parse_finite_table(data)
    elif kind == "finite-gamma":
        payload = _parse_finite_gamma(data)
    else:
        payload = _parse_presentation(data)
    return AlgebraDocument(kind, payload, name)


def canonical_json(doc: AlgebraDocument) -> str:
    """Canonical serialization: sorted keys, compact separators, newline."""
    return json.dumps(doc.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
