"""Command-line front end.

Exit codes: 0 positive verdict, 1 negative verdict with a witness, 2 input or
usage error.  Certificates go to stdout unless ``--certificate PATH`` is
given; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .acyclicity import RegularCircuit, acyclicity_test
from .certificates import verify_certificate
from .decomposition import decompose, decompose_strong, final_barrier, find_strong_separator, find_weak_separator
from .errors import ContractViolation, GraphInputError
from .graph import bidirected_to_skew, skew_to_bidirected
from .matching import AlternatingCircuit, alternating_circuit_violation, unique_matching
from .oracle import KINDS, GenSpec, generate
from .reductions import canonical_preprocess


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise GraphInputError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise GraphInputError(f"{path}: not an ASCII file (byte {exc.start})") from None


def _load_skew(path: str):
    text = _read(path)
    kind = formats.detect_format(text)
    if kind != "ssg":
        raise GraphInputError(f"{path}: expected a skew graph file (header 'ssg'), found {kind or 'nothing'!r}; use 'convert' first")
    try:
        return formats.parse_ssg(text)
    except GraphInputError as exc:
        raise GraphInputError(f"{path}: {exc}") from None


def _emit(args, obj: dict | None) -> None:
    if obj is None:
        return
    text = formats.dumps(obj)
    if getattr(args, "certificate", None):
        Path(args.certificate).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_check(args) -> int:
    g = _load_skew(args.graph)
    verdict = acyclicity_test(g)
    if isinstance(verdict, RegularCircuit):
        _note(f"regular circuit of length {len(verdict.walk)}")
        _emit(args, formats.certificate_to_json(g, verdict))
        return 1
    _note("weakly acyclic")
    _emit(args, formats.certificate_to_json(g, final_barrier(g)))
    return 0


def cmd_decompose(args) -> int:
    g = _load_skew(args.graph)
    tree = decompose(g)
    _emit(args, formats.certificate_to_json(g, tree))
    if isinstance(tree, RegularCircuit):
        _note("regular circuit found; no decomposition exists")
        return 1
    _note(f"weak decomposition with {tree.size()} tree node{'' if tree.size() == 1 else 's'}")
    return 0


def cmd_decompose_strong(args) -> int:
    g = _load_skew(args.graph)
    tree = decompose_strong(g)
    _emit(args, formats.certificate_to_json(g, tree))
    if isinstance(tree, RegularCircuit):
        _note("regular circuit found; no decomposition exists")
        return 1
    _note("strong decomposition built")
    return 0


def cmd_separator(args) -> int:
    g = _load_skew(args.graph)
    if args.strong:
        verdict = acyclicity_test(g)
        if isinstance(verdict, RegularCircuit):
            _emit(args, formats.certificate_to_json(g, verdict))
            return 1
        try:
            sep = find_strong_separator(g)
        except ContractViolation as exc:
            raise GraphInputError(f"no strong separator: {exc}") from None
        _emit(args, formats.certificate_to_json(g, sep))
        return 0
    cert = find_weak_separator(g)
    _emit(args, formats.certificate_to_json(g, cert))
    return 1 if isinstance(cert, RegularCircuit) else 0


def cmd_matching(args) -> int:
    text = _read(args.graph)
    try:
        inst = formats.parse_mug(text)
    except GraphInputError as exc:
        raise GraphInputError(f"{args.graph}: {exc}") from None
    verdict = unique_matching(inst)
    if isinstance(verdict, AlternatingCircuit):
        _note("perfect matching is not unique")
        _emit(args, formats.certificate_to_json(None, verdict))
        return 1
    _note("perfect matching is unique")
    return 0


def cmd_gen(args) -> int:
    res = generate(GenSpec(args.kind, args.pairs, args.arcs, args.seed))
    g = res.graph
    fmt = args.format or ("bdg" if args.kind == "random-bidirected" else "ssg")
    if fmt == "ssg":
        if not hasattr(g, "adj"):
            g, _ = bidirected_to_skew(g)
        text = formats.write_ssg(g)
    else:
        if hasattr(g, "adj"):
            g = skew_to_bidirected(g)
        text = formats.write_bdg(g)
    _write_out(args, text)
    return 0


def cmd_convert(args) -> int:
    text = _read(args.input)
    kind = formats.detect_format(text)
    try:
        if kind == "bdg":
            bg = formats.parse_bdg(text)
            g = canonical_preprocess(bg)[0] if args.preprocess else bidirected_to_skew(bg)[0]
            out = formats.write_ssg(g) if args.to in (None, "ssg") else formats.write_bdg(skew_to_bidirected(g))
        elif kind == "ssg":
            g = formats.parse_ssg(text)
            if args.preprocess:
                g = canonical_preprocess(skew_to_bidirected(g))[0]
            out = formats.write_bdg(skew_to_bidirected(g)) if args.to in (None, "bdg") else formats.write_ssg(g)
        else:
            raise GraphInputError(f"line 1: unknown header {kind!r}; expected 'ssg' or 'bdg'")
    except GraphInputError as exc:
        raise GraphInputError(f"{args.input}: {exc}") from None
    _write_out(args, out)
    return 0


def cmd_verify(args) -> int:
    try:
        data = json.loads(_read(args.cert))
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"{args.cert}: line {exc.lineno}: invalid JSON ({exc.msg})") from None
    text = _read(args.graph)
    kind = formats.detect_format(text)
    if isinstance(data, dict) and data.get("type") == "alternating-circuit":
        if kind != "mug":
            raise GraphInputError(f"{args.graph}: an alternating circuit needs a matching file")
        inst = formats.parse_mug(text)
        problem = alternating_circuit_violation(inst, formats.certificate_from_json(None, data))
        problems = [problem] if problem else []
    else:
        g = _load_skew(args.graph)
        cert = formats.certificate_from_json(g, data)
        try:
            problems = [str(v) for v in verify_certificate(g, cert, deep=True)]
        except GraphInputError as exc:
            problems = [f"parts violate the input precondition: {exc}"]
    if problems:
        sys.stdout.write(formats.dumps({"type": "violations", "violations": problems}))
        _note("certificate rejected")
        return 1
    _note("certificate valid")
    return 0


def _write_out(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewacyclic", description="Weak acyclicity of skew-symmetric and bidirected graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, fn, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph")
        sp.add_argument("--certificate", metavar="PATH", help="write the certificate here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    graph_cmd("check", cmd_check, "test weak acyclicity")
    graph_cmd("decompose", cmd_decompose, "weak acyclic decomposition (linear time)")
    graph_cmd("decompose-strong", cmd_decompose_strong, "strong acyclic decomposition")
    sp = graph_cmd("separator", cmd_separator, "weak (or strong) separator")
    sp.add_argument("--strong", action="store_true", help="require a strong separator")
    graph_cmd("matching-unique", cmd_matching, "is the given perfect matching unique?")

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--pairs", type=int, required=True)
    sp.add_argument("--arcs", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("ssg", "bdg"))
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("verify", help="check a certificate against a graph")
    sp.add_argument("cert")
    sp.add_argument("graph")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("convert", help="convert between .bdg and .ssg")
    sp.add_argument("input")
    sp.add_argument("--to", choices=("ssg", "bdg"))
    sp.add_argument("--preprocess", action="store_true", help="apply the degree/loop preprocessing")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GraphInputError as exc:
        _note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
