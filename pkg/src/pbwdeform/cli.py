"""Command-line front end.

Exit codes: 0 success / PBW, 1 not PBW (or methods disagree, or not
convertible), 2 input or validation error.
"""
from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations
from typing import Sequence

from . import __version__
from .colorlie import NotColorConvertible, color_to_hq, hq_to_color, parse_color, serialize_color
from .cyclotomic import CycloOrderError, ScalarSyntaxError
from .hochschild import bracket_CL, dual_d, gerstenhaber_square_L, kappa_cochain
from .oracle import ResourceLimitError
from .pbw import METHODS, PbwReport, check_pbw
from .presentation import DeformationSpec, SpecError, parse_spec, serialize_spec, spec_digest
from .skew import StepLimitExceeded, algebra, format_element, parse_expression

MAX_WITNESSES = 5


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _load(path: str) -> DeformationSpec:
    return parse_spec(_read(path))


def format_report(rep: PbwReport) -> list[str]:
    out = [f"method {rep.method}"]
    for c in rep.conditions:
        out.append(f"  {c.name}: {'PASS' if c.passed else 'FAIL'}")
        for w in c.witnesses[:MAX_WITNESSES]:
            out.append(f"    witness {w.describe()}")
        if len(c.witnesses) > MAX_WITNESSES:
            out.append(f"    ... {len(c.witnesses) - MAX_WITNESSES} more")
        if c.name.startswith("(1)") and "consistent" in c.details and not c.details["consistent"]:
            out.append("    WARNING: minor formula and action formula disagree")
        if c.name.startswith("(3)") and "left_zero" in c.details:
            out.append(
                f"    left side {'zero' if c.details['left_zero'] else 'nonzero'}, "
                f"right side {'zero' if c.details['right_zero'] else 'nonzero'}"
            )
        if "dims" in c.details:
            out.append(f"    dims {' '.join(map(str, c.details['dims']))}")
            out.append(f"    expected {' '.join(map(str, c.details['expected']))}")
    out.append(f"  verdict {rep.method}: {'PASS' if rep.passed else 'FAIL'}")
    return out


def cmd_check(args) -> int:
    spec = _load(args.file)
    methods = list(METHODS) if args.method == "all" else [args.method]
    lines = [f"pbwdeform {__version__}", f"spec {spec_digest(spec)}"]
    verdicts = {}
    for m in methods:
        t0 = time.perf_counter()
        rep = check_pbw(spec, m, args.degree)
        elapsed = time.perf_counter() - t0
        lines += format_report(rep)
        if args.timing:
            lines.append(f"  time {m}: {elapsed:.3f}s")
        verdicts[m] = rep.passed
    agree = len(set(verdicts.values())) == 1
    if len(methods) > 1:
        if agree:
            lines.append("agreement: all methods agree")
        else:
            detail = " ".join(f"{m}={'PASS' if v else 'FAIL'}" for m, v in verdicts.items())
            lines.append(f"agreement: DISAGREEMENT {detail}")
    ok = agree and all(verdicts.values())
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    print("\n".join(lines))
    return 0 if ok else 1


def _evaluate(spec: DeformationSpec, text: str):
    return algebra(spec).normal_form(parse_expression(text, spec))


def cmd_normal_form(args) -> int:
    spec = _load(args.file)
    print(format_element(_evaluate(spec, args.expr)))
    return 0


def cmd_multiply(args) -> int:
    spec = _load(args.file)
    alg = algebra(spec)
    print(format_element(alg.multiply(_evaluate(spec, args.lhs), _evaluate(spec, args.rhs))))
    return 0


def cmd_bracket(args) -> int:
    spec = _load(args.file)
    which = args.which
    if which == "dL":
        c = dual_d(kappa_cochain(spec, "L"))
    elif which == "dC":
        c = dual_d(kappa_cochain(spec, "C"))
    elif which == "LL":
        c = gerstenhaber_square_L(spec)
    else:
        c = bracket_CL(spec)
    lines = c.lines()
    total = len(list(combinations(range(spec.n), 3))) * spec.group.order
    print(f"cochain {which}")
    for line in lines:
        print(f"  {line}")
    print(f"zero entries: {total - len(lines)} of {total}")
    return 0


def cmd_to_color(args) -> int:
    spec = _load(args.file)
    try:
        d = hq_to_color(spec)
    except NotColorConvertible as exc:
        print(f"not convertible: {exc}")
        if exc.witness is not None:
            print(f"witness {' '.join(map(str, exc.witness))}")
        return 1
    _emit(serialize_color(d), args.output)
    return 0


def cmd_from_color(args) -> int:
    d = parse_color(_read(args.file))
    _emit(serialize_spec(color_to_hq(d)), args.output)
    return 0


def cmd_validate(args) -> int:
    spec = _load(args.file)
    print(f"valid: dimension {spec.n}, group order {spec.group.order}, spec {spec_digest(spec)}")
    return 0


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pbwdeform", description="PBW checks for quantum Drinfeld orbifold algebras")
    p.add_argument("--version", action="version", version=f"pbwdeform {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide the PBW property")
    c.add_argument("file")
    c.add_argument("--method", choices=[*METHODS, "all"], default="direct")
    c.add_argument("--degree", type=int, default=4, help="truncation degree for the oracle")
    c.add_argument("--timing", action="store_true", help="print wall-clock time per method")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("normal-form", help="normal form of an expression")
    c.add_argument("file")
    c.add_argument("--expr", required=True)
    c.set_defaults(func=cmd_normal_form)

    c = sub.add_parser("multiply", help="product of two expressions")
    c.add_argument("file")
    c.add_argument("--lhs", required=True)
    c.add_argument("--rhs", required=True)
    c.set_defaults(func=cmd_multiply)

    c = sub.add_parser("bracket", help="print a degree-3 cochain")
    c.add_argument("file")
    c.add_argument("--which", choices=["dL", "dC", "LL", "CL"], required=True)
    c.set_defaults(func=cmd_bracket)

    c = sub.add_parser("to-color", help="convert to color Lie data")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_to_color)

    c = sub.add_parser("from-color", help="convert color Lie data to a deformation file")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_from_color)

    c = sub.add_parser("validate", help="parse and validate a deformation file")
    c.add_argument("file")
    c.set_defaults(func=cmd_validate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpecError, ScalarSyntaxError, CycloOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, StepLimitExceeded) as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
