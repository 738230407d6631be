"""Command-line front end.

Exit codes: 0 success, 2 analysis refused by a cap, 3 expectation mismatch or
oracle disagreement, 4 input error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .analysis import analyze, expectation_failures
from .enumerate import DEFAULT_ENUM_CAP
from .formats import SchemaError, load_genmatrix_json
from .gallery import UnknownExample, gallery
from .ideals import EXCEEDS_CAP, nilpotency_cap
from .parser import Example, ParseError, build, parse_expr
from .peirce import (
    DEFAULT_DEPTH_CAP,
    DEFAULT_ORACLE_CAP,
    all_pivot_dimensions,
    idempotent_table,
    peirce_dimension,
)
from .radical import jacobson_radical
from .report import emit_report
from .ring import AxiomError, CapExceeded, InternalConsistencyError, RingError, verify_axioms

EXIT_OK = 0
EXIT_CAP = 2
EXIT_MISMATCH = 3
EXIT_INPUT = 4


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--enum-cap", type=_positive, default=DEFAULT_ENUM_CAP)
    common.add_argument("--depth-cap", type=_positive, default=DEFAULT_DEPTH_CAP)
    common.add_argument("--oracle-cap", type=_positive, default=DEFAULT_ORACLE_CAP)
    common.add_argument("--nilpotency-cap", type=_positive, default=None,
                        help="default: composition length + 1")
    common.add_argument("--workers", type=_positive, default=None,
                        help="default: $PEIRCE_WORKERS or 1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="peirce", description="Peirce structure of finite rings.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in (("verify", "check the ring axioms"),
                            ("idempotents", "list idempotents"),
                            ("dimension", "Peirce dimension"),
                            ("radicals", "Jacobson and prime radicals"),
                            ("analyze", "full analysis with expectation checks"),
                            ("oracle", "element-level brute-force cross-check")):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("spec", help="ring expression or path to a JSON document")
        if name == "idempotents":
            sp.add_argument("--classify", action="store_true")
        if name == "dimension":
            sp.add_argument("--all-pivots", action="store_true")
        if name == "analyze":
            sp.add_argument("--json", metavar="PATH", default=None)
            sp.add_argument("--restarts", type=int, default=0,
                            help="randomized restarts for the D(R)- independence check")
    return p


def load_spec(spec, allow_general=False):
    """``(ring, gallery_entry or None)`` for an expression or a JSON file path."""
    if os.path.isfile(spec):
        ring = load_genmatrix_json(spec)
        if getattr(ring, "valid", True) is False:
            raise AxiomError(ring.axiom_report)
        return ring, None
    node = parse_expr(spec)
    if isinstance(node, Example):
        entry = gallery(node.label, allow_general=allow_general)
        return entry.ring, entry
    return build(node), None


def _cmd_verify(ring, args):
    rep = verify_axioms(ring)
    doc = {"ring": ring.name, "size": ring.size, "axioms_ok": rep.ok,
           "associativity_failures": len(rep.associativity_failures),
           "identity_failures": len(rep.identity_failures)}
    return doc, EXIT_OK if rep.ok else EXIT_INPUT


def _cmd_idempotents(ring, args):
    table = idempotent_table(ring, args.enum_cap)
    rows = []
    for i, e in enumerate(table.elements):
        row = {"element": list(e)}
        if args.classify:
            row.update(inner=bool(table.inner[i]), outer=bool(table.outer[i]),
                       central=bool(table.central[i]), peirce_trivial=bool(table.trivial[i]))
        rows.append(row)
    return {"ring": ring.name, "count": len(rows), "idempotents": rows}, EXIT_OK


def _dim(d):
    return "exceeds cap" if d is EXCEEDS_CAP else d


def _cmd_dimension(ring, args):
    res = peirce_dimension(ring, args.depth_cap, cap=args.enum_cap)
    doc = {"ring": ring.name, "dimension": _dim(res.dimension)}
    code = EXIT_OK if res.dimension is not EXCEEDS_CAP else EXIT_CAP
    if args.all_pivots:
        checks = all_pivot_dimensions(ring, args.depth_cap, args.enum_cap)
        doc["pivots"] = [{"pivot": list(c.pivot), "corner": _dim(c.corner_dimension),
                          "complement": _dim(c.complement_dimension), "total": _dim(c.total)}
                         for c in checks]
        doc["pivot_violations"] = sum(1 for c in checks if c.total != res.dimension)
        if doc["pivot_violations"]:
            code = EXIT_MISMATCH
    return doc, code


def _subgroup(s):
    return {"size": s.size, "generators": [list(g) for g in s.generators]}


def _cmd_radicals(ring, args):
    rad = jacobson_radical(ring, oracle_cap=args.oracle_cap)
    doc = {"ring": ring.name, "J": _subgroup(rad.jacobson), "B": _subgroup(rad.prime_radical),
           "method": rad.method, "prime_method": rad.prime_method,
           "methods_run": sorted(rad.methods), "nilpotency_index_of_J": _dim(rad.nilpotency_index_of_J),
           "J_of_quotient_zero": rad.quotient_radical_zero}
    return doc, EXIT_OK


def _cmd_analyze(ring, args, entry):
    if entry is not None:
        doc = analyze(ring, entry.name, entry.expectations, entry.elements, entry.elements,
                      args.enum_cap, args.depth_cap, args.oracle_cap, seed=args.seed,
                      restarts=args.restarts)
    else:
        doc = analyze(ring, enum_cap=args.enum_cap, depth_cap=args.depth_cap,
                      oracle_cap=args.oracle_cap, seed=args.seed, restarts=args.restarts)
    code = EXIT_MISMATCH if expectation_failures(doc) else EXIT_OK
    if doc["dimension"] == "exceeds cap" and code == EXIT_OK:
        code = EXIT_CAP
    return doc, code


def _element_set(s):
    return sorted(tuple(int(v) for v in row) for row in s.elements())


def _cmd_oracle(ring, args):
    from .oracle import oracle_report
    from .radical import prime_radical

    orc = oracle_report(ring, args.oracle_cap, args.depth_cap)
    table = idempotent_table(ring, args.enum_cap)
    engine_rows = sorted((e, bool(table.inner[i]), bool(table.outer[i]), bool(table.central[i]))
                         for i, e in enumerate(table.elements))
    oracle_rows = sorted(orc.idempotents)
    res = peirce_dimension(ring, args.depth_cap, cap=args.enum_cap)
    engine_dim = None if res.dimension is EXCEEDS_CAP else res.dimension
    rad = jacobson_radical(ring, oracle_cap=args.oracle_cap)
    B = prime_radical(ring, cap=args.oracle_cap)
    diffs = []
    if engine_rows != oracle_rows:
        diffs.append("idempotent classification")
    if engine_dim != orc.dimension:
        diffs.append("dimension")
    if _element_set(rad.jacobson) != orc.jacobson:
        diffs.append("jacobson radical")
    if _element_set(B) != orc.prime_radical:
        diffs.append("prime radical")
    doc = {"ring": ring.name, "size": ring.size, "idempotents": len(oracle_rows),
           "dimension": _dim(res.dimension), "oracle_dimension": orc.dimension,
           "J_size": len(orc.jacobson), "B_size": len(orc.prime_radical), "diffs": diffs}
    return doc, EXIT_MISMATCH if diffs else EXIT_OK


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    saved = os.environ.get("PEIRCE_WORKERS")
    if args.workers is not None:
        os.environ["PEIRCE_WORKERS"] = str(args.workers)
    try:
        return _dispatch(args, stdout, stderr)
    finally:
        if saved is None:
            os.environ.pop("PEIRCE_WORKERS", None)
        else:
            os.environ["PEIRCE_WORKERS"] = saved


def _dispatch(args, stdout, stderr):
    try:
        with nilpotency_cap(args.nilpotency_cap):
            ring, entry = load_spec(args.spec)
            if args.command == "verify":
                doc, code = _cmd_verify(ring, args)
            elif args.command == "idempotents":
                doc, code = _cmd_idempotents(ring, args)
            elif args.command == "dimension":
                doc, code = _cmd_dimension(ring, args)
            elif args.command == "radicals":
                doc, code = _cmd_radicals(ring, args)
            elif args.command == "analyze":
                doc, code = _cmd_analyze(ring, args, entry)
            else:
                doc, code = _cmd_oracle(ring, args)
    except CapExceeded as exc:
        print(f"peirce: refused: {exc}", file=stderr)
        return EXIT_CAP
    except InternalConsistencyError as exc:
        print(f"peirce: methods disagree: {exc}", file=stderr)
        return EXIT_MISMATCH
    except (ParseError, SchemaError, AxiomError, UnknownExample, OSError, RingError) as exc:
        print(f"peirce: input error: {exc}", file=stderr)
        return EXIT_INPUT
    text = emit_report(doc, args.format)
    json_path = getattr(args, "json", None)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(emit_report(doc, "json"))
    stdout.write(text)
    if code == EXIT_MISMATCH:
        print("peirce: expectation mismatch", file=stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
