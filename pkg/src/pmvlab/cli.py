"""Command-line interface.

Commands: validate, analyze, summands, orthocomplete, large, verify.
Exit codes: 0 all checks pass, 1 property violation, 2 input error,
3 inconclusive results present.  ``--json`` writes a machine-readable
report to stdout; human diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import verify as verify_mod
from .documents import canonical_json, parse_document, presentation_document
from .errors import PMVError, SchemaError
from .finite import FinitePMV, boolean_skeleton, check_axioms, classify
from .ideals import enumerate_ideals, polar_lattice
from .lgroup import GammaAlgebra, validate_presentation
from .ortho import is_large, orthocompletion
from .summands import classify_projectability, summand_ideals

EXIT_PASS, EXIT_VIOLATION, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _jsonable(value):
    """Recursively convert algebra data (tuples, Fractions) to JSON values."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str, float)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [_jsonable(v) for v in items]
    return repr(value)


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        json.dump(_jsonable(payload), sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(human.rstrip() + "\n")


def _load_algebra(path: str):
    with open(path, "rb") as fh:
        return parse_document(fh.read()).to_algebra()


def cmd_validate(args) -> int:
    m = _load_algebra(args.file)
    if isinstance(m, FinitePMV):
        report = check_axioms(m)
        payload = report.to_json()
        ok = report.passed
        human = "valid: all axioms hold" if ok else f"INVALID: {len(report.violations)} violations, first {report.violations[0]}"
    else:
        pres = validate_presentation(m.presentation, samples=args.samples, seed=args.seed)
        hit = verify_mod.sampled_axiom_check(m, args.samples, args.seed)
        ok = pres.valid and hit is None
        payload = {"presentation_valid": pres.valid, "axiom_violation": hit, "samples": args.samples}
        human = "valid: closure and axioms hold on samples" if ok else f"INVALID: {payload}"
    _emit(args, {"command": "validate", "ok": ok, "report": payload}, human)
    return EXIT_PASS if ok else EXIT_VIOLATION


def cmd_analyze(args) -> int:
    m = _load_algebra(args.file)
    proj = classify_projectability(m)
    if isinstance(m, FinitePMV):
        ideals = enumerate_ideals(m, cap=args.cap)
        payload = {
            "size": m.size,
            "classification": classify(m, samples=args.samples, seed=args.seed).to_json(),
            "ideals": [
                {"members": list(i.members), **c.to_json()} for i, c in ideals
            ],
            "polar_ideals": [list(i.members) for i in polar_lattice(m)],
            "boolean_elements": list(boolean_skeleton(m)),
        }
        human = (
            f"finite algebra, {m.size} elements; {len(ideals)} ideals; "
            f"{len(payload['boolean_elements'])} Boolean elements; "
            f"{'strongly projectable' if proj.strongly_projectable else 'not strongly projectable'}"
        )
    else:
        payload = {
            "blocks": len(m.blocks),
            "linkage": [list(c) for c in m.presentation.linkage],
            "boolean_elements": [list(b) for b in m.boolean_elements()],
            "polar_supports": [sorted(i.support) for i in polar_lattice(m)],
        }
        human = (
            f"interval algebra on {len(m.blocks)} blocks; "
            f"{len(payload['boolean_elements'])} Boolean elements; "
            f"{'strongly projectable' if proj.strongly_projectable else 'not strongly projectable'}"
        )
    payload["projectable"] = proj.projectable
    payload["strongly_projectable"] = proj.strongly_projectable
    _emit(args, {"command": "analyze", "report": payload}, human)
    return EXIT_PASS


def cmd_summands(args) -> int:
    m = _load_algebra(args.file)
    decs = summand_ideals(m)
    if isinstance(m, FinitePMV):
        items = [
            {
                "ideal": list(d.ideal.members),
                "complement": list(d.complement.members),
                "witness": d.witness,
                "complement_witness": d.complement_witness,
            }
            for d in decs
        ]
    else:
        items = [
            {
                "ideal_support": sorted(d.ideal.support),
                "complement_support": sorted(d.complement.support),
                "witness": d.witness,
                "complement_witness": d.complement_witness,
            }
            for d in decs
        ]
    _emit(
        args,
        {"command": "summands", "count": len(decs), "summands": items},
        f"{len(decs)} summand decompositions",
    )
    return EXIT_PASS


def cmd_orthocomplete(args) -> int:
    m = _load_algebra(args.file)
    res = orthocompletion(m)
    if isinstance(res.algebra, FinitePMV):
        payload = {"command": "orthocomplete", "identity": True, "embedding": res.embedding}
        _emit(args, payload, "already orthocomplete: O(A) = A")
        return EXIT_PASS
    doc = presentation_document(res.algebra.presentation)
    text = canonical_json(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(
            args,
            {"command": "orthocomplete", "output": args.output,
             "embedding": {"kind": res.embedding}},
            f"orthocompletion written to {args.output}",
        )
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_large(args) -> int:
    sub = _load_algebra(args.sub)
    sup = _load_algebra(getattr(args, "super"))
    if isinstance(sup, FinitePMV):
        if not (isinstance(sub, FinitePMV) and sub.size == sup.size):
            raise SchemaError("finite pairs must present the same algebra", "/")
        cert = is_large(sup, sup, n_bound=args.bound, seed=args.seed)
    else:
        if isinstance(sub, FinitePMV):
            raise SchemaError("cannot embed a finite table in an interval algebra", "/")
        if not isinstance(sub, GammaAlgebra):
            raise SchemaError("expected two interval algebras", "/")
        cert = is_large(sub, sup, n_bound=args.bound, samples=args.samples, seed=args.seed)
    payload = {
        "command": "large",
        "status": cert.status,
        "witnesses": [{"element": y, "n": n, "witness": x} for y, n, x in cert.entries[:20]],
        "failures": cert.failures[:5],
    }
    _emit(args, payload, f"largeness: {cert.status} ({len(cert.entries)} witnesses)")
    if cert.status == "pass":
        return EXIT_PASS
    return EXIT_VIOLATION if cert.status == "fail" else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    report = verify_mod.run_suite(args.suite, seed=args.seed, samples=args.samples)
    lines = [
        f"{r.property_id}: {r.status} ({r.runtime:.2f}s)" for r in report.records
    ]
    _emit(args, report.to_json(), "\n".join(lines))
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmvlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="algebra document (JSON)")
        p.add_argument("--json", action="store_true", help="JSON report on stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--bound", type=int, default=16)
        p.add_argument("--cap", type=int, default=64)
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("validate", help="check axioms / presentation closure")
    common(p)
    p.set_defaults(func=cmd_validate, default_samples=10_000)
    p = sub.add_parser("analyze", help="ideals, polars, Boolean skeleton, projectability")
    common(p)
    p.set_defaults(func=cmd_analyze, default_samples=2000)
    p = sub.add_parser("summands", help="direct summand decompositions")
    common(p)
    p.set_defaults(func=cmd_summands, default_samples=0)
    p = sub.add_parser("orthocomplete", help="compute the orthocompletion document")
    common(p)
    p.set_defaults(func=cmd_orthocomplete, default_samples=0)
    p = sub.add_parser("large", help="certify a large subalgebra pair")
    common(p, with_file=False)
    p.add_argument("--sub", required=True, help="subalgebra document")
    p.add_argument("--super", required=True, help="extension document")
    p.set_defaults(func=cmd_large, default_samples=200)
    p = sub.add_parser("verify", help="run a property suite")
    common(p, with_file=False)
    p.add_argument("--suite", choices=verify_mod.SUITES, default="all")
    p.set_defaults(func=cmd_verify, default_samples=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples is None:
        args.samples = args.default_samples
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PMVError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
