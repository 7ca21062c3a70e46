"""Command line front end.

Exit codes: 0 ok, 1 parse error, 2 validation failure, 3 cap exceeded,
4 theorem check failed, 5 oracle mismatch.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import pipeline
from .cubes import complex_dot, complex_json
from .cutpoint import cutpoint_tree_dot
from .errors import CapExceeded, CutCubeError, ModelError, TheoremViolation
from .io import dumps, load_instance, write_text
from .models import random_instance
from .pipeline import Caps
from .trees import typed_tree_dot, typed_tree_json
from .wallspace import crossing_dot

DEFAULT_OUT = "cutcube-out"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cutcube", description="Cut sets, dual cube complexes and cut point trees of finite graph models.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        sp.add_argument("--input", "-i", required=needs_input, help="instance JSON file")
        sp.add_argument("--out", "-o", help="directory for artifacts")
        sp.add_argument("--cap-group", type=int, default=pipeline.DEFAULT_GROUP_CAP, help="largest group order enumerated")
        sp.add_argument("--cap-vertices", type=int, default=pipeline.DEFAULT_VERTEX_CAP, help="largest complex built")
        sp.add_argument("--cap-walls", type=int, default=pipeline.DEFAULT_ORACLE_WALLS, help="largest family the oracle scans")

    common(sub.add_parser("validate", help="check the model assumptions"))
    for name, text in (("build", "build the dual cube complex"), ("tree", "build and compare the two trees")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        sp.add_argument("--no-oracle", action="store_true", help="skip the brute-force cross-check")
    sp = sub.add_parser("oracle", help="cross-check the complex against exhaustive enumeration")
    common(sp, needs_input=False)
    sp.add_argument("--random", type=int, default=0, metavar="N", help="also check N random instances")
    sp.add_argument("--seed", type=int, default=0, help="seed for --random")
    return p


def _caps(args) -> Caps:
    return Caps(args.cap_group, args.cap_vertices, args.cap_walls)


def _emit(args, files: dict, report_name: str, report: str, default_out: str = None):
    sys.stdout.write(report)
    out = args.out or default_out
    if out:
        out = Path(out)
        for name, text in sorted(files.items()):
            write_text(out / name, text)
        write_text(out / report_name, report)


def cmd_validate(args) -> int:
    inst = load_instance(args.input)
    rep = pipeline.validate(inst, _caps(args))
    lines = [f"instance: {inst.name or '-'}"]
    lines += [f"{'ok  ' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "") for name, ok, detail in rep.checks]
    lines.append("PASS" if rep.ok else "FAIL")
    _emit(args, {}, "validate.txt", "\n".join(lines) + "\n")
    return 0 if rep.ok else ModelError.exit_code


def cmd_build(args) -> int:
    inst = load_instance(args.input)
    b = pipeline.build(inst, _caps(args), oracle=not args.no_oracle)
    files = {
        "complex.json": dumps(complex_json(b.cx, b.hyps, b.action)),
        "complex.dot": complex_dot(b.cx, b.hyps),
        "crossing.dot": crossing_dot(b.ws),
        "divisions.json": dumps(b.validation.family.to_json(inst.graph)),
    }
    _emit(args, files, "report.txt", pipeline.build_report(inst, b), DEFAULT_OUT)
    return 0


def cmd_tree(args) -> int:
    inst = load_instance(args.input)
    try:
        r = pipeline.tree(inst, _caps(args), oracle=not args.no_oracle)
    except TheoremViolation as e:
        if e.certificate:
            write_text(Path(args.out or DEFAULT_OUT) / "certificate.json", dumps(e.certificate))
        raise
    files = {
        "typed_tree.dot": typed_tree_dot(r.typed),
        "typed_tree.json": dumps(typed_tree_json(r.typed)),
        "cutpoint_tree.dot": cutpoint_tree_dot(r.cpt),
        "certificate.json": dumps(r.certificate),
        "complex.dot": complex_dot(r.build.cx, r.build.hyps),
    }
    _emit(args, files, "tree_report.txt", pipeline.tree_report(inst, r), DEFAULT_OUT)
    return 0


def cmd_oracle(args) -> int:
    if not args.input and not args.random:
        raise ModelError("oracle needs --input or --random N")
    caps = _caps(args)
    chunks = []
    if args.input:
        inst = load_instance(args.input)
        val = pipeline.validate(inst, caps)
        pipeline.require_valid(val)
        if val.ws.k > caps.walls:
            raise CapExceeded(f"oracle limited to {caps.walls} walls, family has {val.ws.k}")
        b = pipeline.build(inst, caps, oracle=True)
        chunks.append(pipeline.oracle_report(inst, b))
    if args.random:
        rng = random.Random(args.seed)
        total_v = total_pairs = 0
        for _ in range(args.random):
            inst = random_instance(rng, max_walls=min(12, caps.walls))
            b = pipeline.build(inst, caps, oracle=True)
            total_v += b.oracle.built_vertices
            total_pairs += sum(b.oracle.pair_checks.values())
        chunks.append(f"random instances: {args.random} (seed {args.seed})\n"
                      f"vertices compared: {total_v}\npairs compared: {total_pairs}\noracle agreement: 100%\n")
    _emit(args, {}, "oracle.txt", "\n".join(chunks))
    return 0


COMMANDS = {"validate": cmd_validate, "build": cmd_build, "tree": cmd_tree, "oracle": cmd_oracle}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CutCubeError as e:
        print(f"cutcube: error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
