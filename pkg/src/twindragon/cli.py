"""Command-line entry point: ``twindragon {automaton,dim,intervals,render,verify}``.

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 degenerate line,
4 empty intersection, 5 I/O error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import buchi, dimension, geometry, lines, verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DEGENERATE, EXIT_EMPTY, EXIT_IO = range(6)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
# lets argparse read "-1/5" as a value rather than an option
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an integer or num/den rational (decimals are not accepted)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has a zero denominator") from None


def _line_args(p: argparse.ArgumentParser):
    for name in ("p", "q", "r"):
        p.add_argument(name, type=rational, help=f"line coefficient {name} in p x + q y = r")


def _resolve_line(args) -> lines.LineParams:
    L = lines.normalize_line(args.p, args.q, args.r)
    given = " ".join(str(v) for v in (args.p, args.q, args.r))
    print(f"line {given} normalized to {L} = ({L.p}, {L.q}, {L.r})", file=sys.stderr)
    return L


def _section(L: lines.LineParams, boundary: bool, trimmed: bool = True) -> buchi.BuchiAutomaton:
    if not boundary:
        return lines.build_line_automaton(L, trimmed=trimmed)
    A = buchi.product(lines.build_line_automaton(L), lines.boundary_automaton_base4(),
                      name=f"∂K ∩ {L}")
    return buchi.trim(A) if trimmed else A


def _emit(doc: dict):
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def cmd_automaton(args) -> int:
    L = _resolve_line(args)
    A = _section(L, args.boundary, trimmed=not args.untrimmed)
    text = buchi.export(A, args.format)
    if args.format in ("dot", "graph"):
        text = f"// line {L} = ({L.p}, {L.q}, {L.r})\n" + text
    sys.stdout.write(text)
    return EXIT_OK


def cmd_dim(args) -> int:
    L = _resolve_line(args)
    A = _section(L, args.boundary)
    report = dimension.hausdorff_dimension(A, line=L)
    if not report.empty:
        dimension.check_not_s_minus_1(report)
    doc = report.to_dict()
    doc["section"] = "boundary" if args.boundary else "tile"
    doc["components"] = dimension.describe_components(report)
    _emit(doc)
    return EXIT_EMPTY if report.empty else EXIT_OK


def cmd_intervals(args) -> int:
    L = _resolve_line(args)
    A = lines.build_line_automaton(L)
    part = args.part or ("imag" if L.q == 0 else "real")
    doc = {"line": [L.p, L.q, L.r], "part": part}
    if A.is_empty():
        doc["empty"] = True
        _emit(doc)
        return EXIT_EMPTY
    res = geometry.extract_interval_union(A, part)
    doc["empty"] = False
    if res:
        doc["intervals"] = [[str(a), str(b)] for a, b in res]
        doc["length"] = str(res.length)
    else:
        doc["intervals"] = None
        doc["reason"] = res.reason
    _emit(doc)
    return EXIT_OK


def _size(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m or int(m.group(1)) == 0 or int(m.group(2)) == 0:
        raise argparse.ArgumentTypeError("size must look like 512x512")
    return int(m.group(1)), int(m.group(2))


def cmd_render(args) -> int:
    from .render import MAX_DEPTH, Viewport, render

    if not 0 <= args.depth <= MAX_DEPTH:
        print(f"error: --depth must lie in [0, {MAX_DEPTH}]", file=sys.stderr)
        return EXIT_USAGE
    line_list = []
    for p, q, r in args.line or []:
        L = lines.normalize_line(p, q, r)
        print(f"line {p} {q} {r} normalized to {L}", file=sys.stderr)
        line_list.append(L)
    try:
        viewport = Viewport(*args.viewport) if args.viewport else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raster = render(args.depth, line_list, viewport, args.size, tile=not args.no_tile)
    try:
        raster.save(args.out)
        if args.points:
            clouds = [geometry.attractor_points(lines.build_line_automaton(L), args.depth)
                      for L in line_list]
            geometry.write_cloud(_concat(clouds), args.points)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out} ({raster.width}x{raster.height}, {raster.occupied()} pixels set)",
          file=sys.stderr)
    return EXIT_OK


def _concat(clouds):
    import numpy as np
    return np.concatenate(clouds) if clouds else np.zeros(0, dtype=complex)


def cmd_verify(args) -> int:
    results = []
    for i, check in enumerate(verify.CHECKS, 1):
        if i in args.skip:
            continue
        res = check()
        print(res.line(), flush=True)
        results.append(res)
    failed = sum(not r.passed for r in results)
    total = sum(r.seconds for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed in {total:.1f}s")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twindragon",
        description="Twin dragon sections by rational lines p x + q y = r.",
        epilog="Set TWINDRAGON_TOL to override the root-isolation tolerance (default 1e-12).")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("automaton", help="print the Büchi automaton of K (or its boundary) on a line")
    _line_args(a)
    a.add_argument("--boundary", action="store_true", help="intersect with the boundary automaton")
    a.add_argument("--untrimmed", action="store_true", help="keep states without accepting runs")
    a.add_argument("--format", choices=("dot", "graph", "json", "structured"), default="dot")
    a.set_defaults(func=cmd_automaton)

    d = sub.add_parser("dim", help="Hausdorff dimension report for a section")
    _line_args(d)
    d.add_argument("--boundary", action="store_true")
    d.set_defaults(func=cmd_dim)

    iv = sub.add_parser("intervals", help="exact interval decomposition of K on a line")
    _line_args(iv)
    iv.add_argument("--part", choices=("imag", "real"), default=None,
                    help="coordinate to project on (default: imag for vertical lines, else real)")
    iv.set_defaults(func=cmd_intervals)

    r = sub.add_parser("render", help="draw K and line sections to a PPM image")
    r.add_argument("--depth", type=int, default=10)
    r.add_argument("--line", nargs=3, type=rational, action="append", metavar=("P", "Q", "R"))
    r.add_argument("--out", required=True)
    r.add_argument("--size", type=_size, default=(512, 512))
    r.add_argument("--viewport", nargs=4, type=rational, metavar=("X0", "X1", "Y0", "Y1"))
    r.add_argument("--no-tile", action="store_true", help="draw only the line sections")
    r.add_argument("--points", help="also write the section point clouds as text")
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--skip", type=int, nargs="*", default=[], help="check numbers to skip")
    v.set_defaults(func=cmd_verify)

    for p in (parser, a, d, iv, r, v):
        p._negative_number_matcher = _NEGATIVE
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except lines.DegenerateLineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
