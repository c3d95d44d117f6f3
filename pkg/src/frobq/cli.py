"""Command line driver.

Subcommands: basis, dim, space, verify, classify, patterns, gen.
Exit codes: 0 ok, 1 parse error, 2 unsupported ideal regime, 3 infinite
dimensional certificate failure, 4 verification failure, 5 internal
consistency fault.  Text mode prints bare values for scripting; --json
emits versioned frobq/1 documents with scalars as exact strings.
"""

import argparse
import json
import sys

from . import closed_forms, families
from .dsl import QuiverDocument, format_document, parse_document
from .errors import (
    FrobqError,
    InfiniteDimensionalError,
    InternalFaultError,
    ParseError,
    SupportViolationError,
    UnsupportedIdealRegimeError,
    ValidationError,
)
from .frobenius import (
    candidate_from_json,
    candidate_to_json,
    frobenius_dimension,
    solve_frobenius_space,
    verify_coproduct,
)
from .ideal import compute_basis
from .linalg import QQ, PrimeField

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_REGIME = 2
EXIT_INFINITE = 3
EXIT_VERIFY = 4
EXIT_INTERNAL = 5

SCHEMA = "frobq/1"


def _field_from_flag(text):
    if text is None:
        return None
    if text == "Q":
        return QQ
    if text.startswith("F"):
        return PrimeField(int(text[1:]))
    raise ValidationError(f"bad field {text!r}; use Q or F<prime>")


def _load(path, field_flag):
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_document(text, field_override=_field_from_flag(field_flag))


def _path_json(path):
    if path.is_trivial:
        return {"e": path.source}
    return list(path.arrows)


def _emit(text, out=None):
    stream = sys.stdout if out is None else open(out, "w", encoding="utf-8")
    try:
        stream.write(text)
    finally:
        if out is not None:
            stream.close()


def cmd_basis(args):
    doc = _load(args.file, args.field)
    algebra = compute_basis(doc.quiver, doc.ideal, doc.field)
    if args.json:
        blocks = []
        for key in sorted(algebra.blocks):
            paths = algebra.blocks[key]
            if not paths:
                continue
            blocks.append({
                "source": key[0],
                "target": key[1],
                "paths": [_path_json(p) for p in paths],
            })
        payload = {
            "schema": SCHEMA,
            "dimension": algebra.dimension,
            "bound": algebra.bound,
            "blocks": blocks,
        }
        _emit(json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"dimension {algebra.dimension}", f"bound {algebra.bound}"]
        for key in sorted(algebra.blocks):
            paths = algebra.blocks[key]
            if not paths:
                continue
            listed = " ".join(str(p) for p in paths)
            lines.append(f"block {key[0]} -> {key[1]}: {listed}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_dim(args):
    doc = _load(args.file, args.field)
    algebra = compute_basis(doc.quiver, doc.ideal, doc.field)
    dimension = frobenius_dimension(algebra)
    if args.json:
        payload = {"schema": SCHEMA, "frobenius_dimension": dimension}
        _emit(json.dumps(payload, indent=2) + "\n")
    else:
        _emit(f"{dimension}\n")
    return EXIT_OK


def cmd_space(args):
    doc = _load(args.file, args.field)
    algebra = compute_basis(doc.quiver, doc.ideal, doc.field)
    space = solve_frobenius_space(algebra)
    if args.json:
        payload = {
            "schema": SCHEMA,
            "dimension": space.dimension,
            "candidates": [candidate_to_json(c) for c in space.basis],
        }
        _emit(json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"dimension {space.dimension}"]
        for i, candidate in enumerate(space.basis):
            lines.append(f"candidate {i}:")
            for vertex in algebra.quiver.vertices:
                tensor = candidate.values.get(vertex)
                if tensor is None or tensor.is_zero:
                    continue
                lines.append(f"  D(e_{vertex}) = {tensor}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args):
    doc = _load(args.file, args.field)
    algebra = compute_basis(doc.quiver, doc.ideal, doc.field)
    with open(args.coproduct, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    try:
        candidate = candidate_from_json(data, algebra)
        ok, counterexample = verify_coproduct(algebra, candidate)
    except SupportViolationError as exc:
        _emit(f"SUPPORT VIOLATION: {exc}\n")
        return EXIT_VERIFY
    if ok:
        _emit("VERIFIED\n")
        return EXIT_OK
    _emit("FAILED: " + counterexample.describe() + "\n")
    return EXIT_VERIFY


def cmd_classify(args):
    doc = _load(args.file, args.field)
    algebra = compute_basis(doc.quiver, doc.ideal, doc.field)
    dimension = frobenius_dimension(algebra)
    lines = [f"algebra dimension {algebra.dimension}",
             f"coproduct space dimension {dimension}"]

    rsz = closed_forms.is_radical_square_zero(doc.quiver, doc.ideal, algebra)
    lines.append(f"radical square zero: {'yes' if rsz else 'no'}")
    if rsz and doc.quiver.arrows:
        formula = closed_forms.radical_square_zero_dimension(doc.quiver)
        agree = "agrees with solver" if formula == dimension else "DISAGREES with solver"
        lines.append(f"  quotient formula dimension: {formula} ({agree})")

    try:
        info = closed_forms.toupie_classify(doc.quiver, doc.ideal, doc.field)
    except ValidationError:
        lines.append("toupie: no")
    else:
        lines.append(f"toupie: yes, kind {info.kind}")
        lines.append(f"  branch lengths: {list(info.branch_lengths)}")
        lines.append(f"  monomial relation branches: {info.monomial_relation_branch_count}")
        lines.append(f"  predicted dimension {info.prediction}: "
                     + ("holds" if info.prediction_holds(dimension) else "VIOLATED"))

    string = closed_forms.is_string(doc.quiver, doc.ideal, algebra)
    if string:
        quadratic = closed_forms.is_string_quadratic(doc.ideal)
        gentle = closed_forms.is_gentle(doc.quiver, doc.ideal, algebra)
        kind = "gentle" if gentle else ("quadratic" if quadratic else "general")
        lines.append(f"string: yes ({kind})")
    else:
        lines.append("string: no")

    matches = closed_forms.detect_local_patterns(doc.quiver, doc.ideal, algebra)
    if matches:
        summary = ", ".join(f"pattern {m.pattern} at {m.vertex}" for m in matches)
        lines.append(f"local patterns: {summary}")
        lines.append("  witness exists, so the space is nontrivial")
    else:
        lines.append("local patterns: none")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_patterns(args):
    doc = _load(args.file, args.field)
    algebra = compute_basis(doc.quiver, doc.ideal, doc.field)
    matches = closed_forms.detect_local_patterns(doc.quiver, doc.ideal, algebra)
    if not matches:
        _emit("no local patterns\n")
        return EXIT_OK
    lines = []
    for m in matches:
        lines.append(f"pattern {m.pattern} at vertex {m.vertex}: "
                     f"in {list(m.in_arrows)}, out {list(m.out_arrows)}, "
                     f"vanishing {[str(p) for p in m.vanishing]}")
        witness = closed_forms.witness_coproduct(m, algebra)
        tensor = witness.value_at(m.vertex)
        lines.append(f"  witness D(e_{m.vertex}) = {tensor} (verified)")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _parse_int_list(text):
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise ValidationError(f"expected comma separated integers, got {text!r}") from None


def _gen_params(args, count, usage):
    if len(args.params) != count:
        raise ValidationError(f"gen {args.family} needs {usage}")
    return args.params


def cmd_gen(args):
    family = args.family
    if family == "linear":
        (n,) = _parse_int_list(_gen_params(args, 1, "<n>")[0])
        rels = [tuple(_parse_int_list(p)) for p in args.relation]
        quiver, ideal = families.gen_linear(n, rels)
    elif family == "cycle":
        params = _gen_params(args, 2, "<n> <d>")
        (n,), (d,) = _parse_int_list(params[0]), _parse_int_list(params[1])
        quiver, ideal = families.gen_cycle(n, d)
    elif family == "canonical":
        weights = tuple(_parse_int_list(_gen_params(args, 1, "<n1,n2,...>")[0]))
        lambdas = tuple(_parse_int_list(args.lambdas)) if args.lambdas else ()
        quiver, ideal = families.gen_canonical(
            families.CanonicalSpec(weights, lambdas))
    elif family == "toupie":
        lengths = tuple(_parse_int_list(_gen_params(args, 1, "<l1,l2,...>")[0]))
        monomial = [tuple(_parse_int_list(p)) for p in args.monomial]
        linear = [_parse_int_list(p) for p in args.linear]
        quiver, ideal = families.gen_toupie(lengths, monomial, linear)
    elif family == "rsz":
        doc = _load(_gen_params(args, 1, "<quiver document>")[0], None)
        quiver, ideal = families.gen_radical_square_zero(doc.quiver)
    elif family == "random":
        seed, vbound, abound, regime = _gen_params(
            args, 4, "<seed> <vertex bound> <arrow bound> <regime>")
        (seed,) = _parse_int_list(seed)
        (vbound,) = _parse_int_list(vbound)
        (abound,) = _parse_int_list(abound)
        quiver, ideal = families.gen_random(seed, vbound, abound, regime)
    else:
        raise ValidationError(f"unknown family {family!r}; choose from "
                              "linear, cycle, canonical, toupie, rsz, random")
    doc = QuiverDocument(quiver, ideal, QQ)
    _emit(format_document(doc), args.output)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="frobq",
        description="Exact computation of nearly Frobenius coproduct spaces "
                    "on quotients of path algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(p):
        p.add_argument("file", help="quiver document")
        p.add_argument("--field", help="override the document field (Q or F<prime>)")
        return p

    p = with_file(sub.add_parser("basis", help="quotient algebra basis per block"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = with_file(sub.add_parser("dim", help="dimension of the coproduct space"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = with_file(sub.add_parser("space", help="basis of the coproduct space"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_space)

    p = with_file(sub.add_parser("verify", help="check a coproduct candidate file"))
    p.add_argument("--coproduct", required=True, help="candidate JSON file")
    p.set_defaults(func=cmd_verify)

    p = with_file(sub.add_parser("classify", help="family classification and "
                                                  "predicted dimensions"))
    p.set_defaults(func=cmd_classify)

    p = with_file(sub.add_parser("patterns", help="local patterns with witnesses"))
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("gen", help="emit a family instance as a document")
    p.add_argument("family", help="linear | cycle | canonical | toupie | rsz | random")
    p.add_argument("params", nargs="*", help="family parameters")
    p.add_argument("--relation", action="append", default=[],
                   help="linear family: start,length")
    p.add_argument("--lambdas", help="canonical family: comma separated scalars")
    p.add_argument("--monomial", action="append", default=[],
                   help="toupie family: branch,start,length")
    p.add_argument("--linear", action="append", default=[],
                   help="toupie family: comma separated branch coefficients")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedIdealRegimeError as exc:
        print(f"unsupported ideal regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except InfiniteDimensionalError as exc:
        print(f"infinite dimensional: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except InternalFaultError as exc:
        print(f"internal consistency fault: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, FrobqError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
