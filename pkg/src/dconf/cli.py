"""Command line front end: generate complexes, analyze spaces, verify, export.

Exit codes: 0 success, 1 verification or agreement failure, 2 usage or input
error, 3 resource-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb

from .cells import enumerate_cells, estimate_cell_count, parse_cell
from .closedform import format_sweep_csv
from .complexes import (ComplexFormatError, SimplicialComplex, complex_text,
                        parse_complex, skeleton_complex)
from .field import build_field, classify, field_dot
from .homology import cellular_complex, homology
from .morse import count_lower_paths, morse_boundary
from .verify import run_suite, sweep_rows, _Workspace

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_RESOURCES = 3

DEFAULT_MAX_CELLS = 10 ** 6


def _default_threads() -> int:
    value = os.environ.get("DCONF_THREADS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _add_complex_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, help="simplex dimension of the generated skeleton")
    parser.add_argument("--d", type=int, help="skeleton dimension of the generated skeleton")
    parser.add_argument("--input", help="path of a complex file instead of --m/--d")
    parser.add_argument("--n", type=int, default=2, help="number of points (default 2)")
    parser.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS,
                        help="refuse runs whose projected cell count exceeds this")


def _load_complex(args) -> SimplicialComplex | int:
    """Return the chosen complex, or an exit code on a usage problem."""
    if args.n < 1:
        return _fail("--n must be at least 1", EXIT_USAGE)
    generated = args.m is not None or args.d is not None
    if generated == (args.input is not None):
        return _fail("give exactly one of --input or both --m and --d", EXIT_USAGE)
    if args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            return _fail(str(exc), EXIT_USAGE)
        try:
            return parse_complex(text)
        except ComplexFormatError as exc:
            return _fail(f"{args.input}: {exc}", EXIT_USAGE)
    if args.m is None or args.d is None:
        return _fail("both --m and --d are required", EXIT_USAGE)
    try:
        return skeleton_complex(args.m, args.d)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)


def _guard_cells(cx: SimplicialComplex, n: int, max_cells: int) -> int | None:
    cap = cx.dimension + 1
    estimate = estimate_cell_count(cx.vertex_count, cap, n)
    if estimate > max_cells:
        return _fail(
            f"projected cell count about {estimate} exceeds the ceiling "
            f"{max_cells}; raise --max-cells to force the run", EXIT_RESOURCES)
    return None


def _cmd_gen(args) -> int:
    if args.m is None or args.d is None:
        return _fail("gen requires --m and --d", EXIT_USAGE)
    if args.d < 1 or args.d > args.m:
        return _fail(f"need 1 <= d <= m, got d={args.d} with m={args.m}", EXIT_USAGE)
    faces = sum(comb(args.m + 1, k) for k in range(1, args.d + 2))
    if faces > args.max_cells:
        return _fail(f"projected face count {faces} exceeds the ceiling "
                     f"{args.max_cells}", EXIT_RESOURCES)
    try:
        _emit(complex_text(skeleton_complex(args.m, args.d)), args.out)
    except OSError as exc:
        return _fail(str(exc), EXIT_USAGE)
    return EXIT_OK


def _cmd_homology(args) -> int:
    cx = _load_complex(args)
    if isinstance(cx, int):
        return cx
    guard = _guard_cells(cx, args.n, args.max_cells)
    if guard is not None:
        return guard
    table = enumerate_cells(cx, args.n)
    if args.method in ("cellular", "both"):
        hcell = homology(cellular_complex(table), threads=args.threads)
    if args.method in ("morse", "both"):
        hmorse = homology(morse_boundary(build_field(table)).to_chain_complex(),
                          threads=args.threads)
    if args.method == "cellular":
        payload = hcell.to_json_dict()
    elif args.method == "morse":
        payload = hmorse.to_json_dict()
    else:
        agree = hcell.agrees_with(hmorse)
        if not agree:
            top = max(len(hcell.degrees), len(hmorse.degrees))
            for p in range(top):
                if (hcell.betti(p), hcell.torsion(p)) != (hmorse.betti(p), hmorse.torsion(p)):
                    print(f"degree {p}: cellular betti {hcell.betti(p)} "
                          f"torsion {list(hcell.torsion(p))}, critical betti "
                          f"{hmorse.betti(p)} torsion {list(hmorse.torsion(p))}",
                          file=sys.stderr)
            payload = {"agree": False, "cellular": hcell.to_json_dict(),
                       "morse": hmorse.to_json_dict()}
            _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
            return EXIT_VERIFICATION
        payload = dict(hcell.to_json_dict())
        payload["agree"] = True
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _cmd_field(args) -> int:
    cx = _load_complex(args)
    if isinstance(cx, int):
        return cx
    guard = _guard_cells(cx, args.n, args.max_cells)
    if guard is not None:
        return guard
    field = build_field(enumerate_cells(cx, args.n))
    dims = None
    if args.dims:
        try:
            dims = [int(part) for part in args.dims.split(",")]
        except ValueError:
            return _fail(f"bad --dims value {args.dims!r}", EXIT_USAGE)
    if args.format == "dot":
        _emit(field_dot(field, dims), args.out)
        return EXIT_OK
    report = classify(field)
    if args.format == "json":
        _emit(json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n",
              args.out)
        return EXIT_OK
    lines = [f"cells: {report.total_cells}, matches: {len(field.matches)}"]
    for p, (c, r, k) in enumerate(report.counts):
        lines.append(f"dimension {p}: {c} critical, {r} redundant, {k} collapsible")
    lines.append(f"acyclic: {report.acyclic}, maximal: {report.maximal}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_paths(args) -> int:
    cx = _load_complex(args)
    if isinstance(cx, int):
        return cx
    guard = _guard_cells(cx, args.n, args.max_cells)
    if guard is not None:
        return guard
    table = enumerate_cells(cx, args.n)
    cells = {}
    for label, text in (("start", args.start), ("end", args.end)):
        try:
            cell = parse_cell(text, cx.vertex_count)
        except ValueError as exc:
            return _fail(f"{label} cell {text!r}: {exc}", EXIT_USAGE)
        if cell not in table:
            return _fail(f"{label} cell {text!r} is not a cell of this space",
                         EXIT_USAGE)
        cells[label] = cell
    field = build_field(table)
    count = count_lower_paths(cells["start"], cells["end"], field)
    _emit(f"{count}\n", args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    projected = 3 ** (args.max_m + 1)
    if projected > args.max_cells:
        return _fail(
            f"a sweep up to m={args.max_m} projects about {projected} cells, "
            f"over the ceiling {args.max_cells}", EXIT_RESOURCES)
    report = run_suite(args.suite, args.max_m)
    if args.csv is not None:
        ws = _Workspace()
        _emit(format_sweep_csv(sweep_rows(min(args.max_m, 6), ws)), args.csv)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if report["passed"] else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dconf",
        description="Configuration spaces of disjoint faces: matchings, "
                    "homology, verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write a skeleton complex file")
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--d", type=int, required=True)
    p_gen.add_argument("--out", help="output path (default stdout)")
    p_gen.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p_gen.set_defaults(handler=_cmd_gen)

    p_hom = sub.add_parser("homology", help="compute homology of a space")
    _add_complex_args(p_hom)
    p_hom.add_argument("--method", choices=("morse", "cellular", "both"),
                       default="both")
    p_hom.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker threads for per-degree reductions")
    p_hom.add_argument("--out", help="output path (default stdout)")
    p_hom.set_defaults(handler=_cmd_homology)

    p_field = sub.add_parser("field", help="build the matching and export it")
    _add_complex_args(p_field)
    p_field.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p_field.add_argument("--dims", help="comma-separated dimensions for dot export")
    p_field.add_argument("--out", help="output path (default stdout)")
    p_field.set_defaults(handler=_cmd_field)

    p_paths = sub.add_parser("paths", help="count lower paths between two cells")
    _add_complex_args(p_paths)
    p_paths.add_argument("--start", required=True, help="cell string, e.g. 4,5|1,2,3")
    p_paths.add_argument("--end", required=True, help="cell string, e.g. 5,6|1,2,3")
    p_paths.add_argument("--out", help="output path (default stdout)")
    p_paths.set_defaults(handler=_cmd_paths)

    p_verify = sub.add_parser("verify", help="run the verification battery")
    p_verify.add_argument("--suite", choices=("quick", "paper"), default="quick")
    p_verify.add_argument("--max-m", type=int, default=6)
    p_verify.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p_verify.add_argument("--csv", help="also write the sweep table to this path")
    p_verify.add_argument("--out", help="report path (default stdout)")
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
