"""``dtower`` command line.

Exit codes: 0 success, 1 other failure, 2 unreadable or malformed input,
3 complex fails validation, 4 grading conflict or bad y-slice,
5 Borromean check mismatch.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io
from .complex import (
    KnotComplex,
    format_id,
    id_sort_key,
    mirror,
    require_valid,
    symmetry_check,
    tensor_product,
)
from .cone import format_towers, verify_borromean
from .dinv import d_invariants
from .errors import ComplexParseError, DTowerError
from .models import PRESETS, preset

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_GRADING = 4
EXIT_MISMATCH = 5

EXIT_FOR_CODE = {
    "PARSE": EXIT_PARSE,
    "INVALID": EXIT_INVALID,
    "GRADING_CONFLICT": EXIT_GRADING,
    "SLICE_RANK": EXIT_GRADING,
}


def load_inputs(args: argparse.Namespace, count: int) -> list[KnotComplex]:
    knots = [io.read_complex(p) for p in args.files]
    for name in args.preset or []:
        try:
            knots.append(preset(name))
        except KeyError as exc:
            raise ComplexParseError(exc.args[0]) from None
    if len(knots) != count:
        raise ComplexParseError(f"expected {count} complex(es), got {len(knots)}")
    return knots


def warn_if_asymmetric(c: KnotComplex) -> None:
    if not symmetry_check(c):
        print(
            f"warning: {c.name}: bifiltration levels are not symmetric under (i,j) -> (j,i)",
            file=sys.stderr,
        )


def emit(c: KnotComplex, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(io.dumps(c))
    else:
        io.write_complex(c, out)


def adjacency_lines(c: KnotComplex) -> list[str]:
    lines = []
    for g in c.generators:
        succ = sorted(c.boundary(g.id), key=id_sort_key)
        lines.append(f"[{format_id(g.id)}]" + "".join(f"{format_id(t)}," for t in succ))
    return lines


def filtration_lines(c: KnotComplex) -> list[str]:
    return [f"F({format_id(g.id)}) = ({g.filt.i},{g.filt.j})" for g in c.generators]


def cmd_d(args) -> int:
    (c,) = load_inputs(args, 1)
    require_valid(c)
    warn_if_asymmetric(c)
    report = d_invariants(c)
    print("\n".join(report.lines()))
    return EXIT_OK


def cmd_sum(args) -> int:
    a, b = load_inputs(args, 2)
    for c in (a, b):
        require_valid(c)
    c = tensor_product(a, b)
    emit(c, args.output)
    if args.output not in (None, "-"):
        print(f"Created knot {c.name} with {len(c)} generators")
        print("\n".join(filtration_lines(c)))
    return EXIT_OK


def cmd_validate(args) -> int:
    (c,) = load_inputs(args, 1)
    require_valid(c)
    print(f"{c.name}: defines a filtered complex ({len(c)} generators)")
    warn_if_asymmetric(c)
    return EXIT_OK


def cmd_mirror(args) -> int:
    (c,) = load_inputs(args, 1)
    emit(mirror(c), args.output)
    return EXIT_OK


def cmd_info(args) -> int:
    (c,) = load_inputs(args, 1)
    print(f"knot {c.name}: {len(c)} generators, coefficients Z/2")
    print("adjacency list")
    print("\n".join(adjacency_lines(c)))
    print("bifiltration levels")
    print("\n".join(filtration_lines(c)))
    return EXIT_OK


def cmd_borromean(args) -> int:
    report = verify_borromean(args.genus, args.sign, args.b)
    print(report.summary())
    print(f"expected: {format_towers(report.expected)}, d_b = {report.expected_d_b}; truncation b = {report.b}")
    print(f"note: {report.note}")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_repl(args) -> int:
    from .repl import run

    return run(banner=not args.no_banner)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtower",
        description="Correction terms of +1 and -1 surgery from CFK^infinity generating complexes (mod 2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_inputs(p: argparse.ArgumentParser, nfiles: str) -> argparse.ArgumentParser:
        p.add_argument("files", nargs=nfiles, metavar="FILE", help="JSON complex document")
        p.add_argument(
            "--preset", action="append", choices=sorted(PRESETS),
            help="use a built-in complex instead of (or after) files; repeatable",
        )
        return p

    with_inputs(sub.add_parser("d", help="print d(S^3_{+1}(K)) and d(S^3_{-1}(K))"), "*").set_defaults(func=cmd_d)
    p = with_inputs(sub.add_parser("sum", help="connected sum of two complexes"), "*")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_sum)
    with_inputs(sub.add_parser("validate", help="check d^2 = 0 and filtration"), "*").set_defaults(func=cmd_validate)
    p = with_inputs(sub.add_parser("mirror", help="write the mirror complex"), "*")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_mirror)
    with_inputs(sub.add_parser("info", help="adjacency list and bifiltration levels"), "*").set_defaults(func=cmd_info)

    p = sub.add_parser("borromean", help="verify the tower structure of +1/-1 surgery on the Borromean knot")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--sign", type=int, choices=(-1, 1), required=True)
    p.add_argument("--b", type=int, default=None, help="truncation bound (default genus + 2)")
    p.set_defaults(func=cmd_borromean)

    p = sub.add_parser("repl", help="interactive menu session")
    p.add_argument("--no-banner", action="store_true")
    p.set_defaults(func=cmd_repl)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DTowerError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_FOR_CODE.get(exc.code, EXIT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
