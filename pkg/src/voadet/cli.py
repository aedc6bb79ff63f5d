"""Command-line entry point.

    voadet snk --k 2 --n-max 4
    voadet det-m1 --lattice A1 --n-max 2
    voadet det-voa --lattice A1A1 --n-max 2 --format csv
    voadet verify-all --jobs 4 --out report.json

Exit status: 0 success, 1 verification mismatch (or a check that could
not be completed), 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

from . import combinatorics as comb
from .detengine import DEFAULT_BUDGET, MODES, SizeError, det_report
from .lattice import BUILTIN_LATTICES, LatticeError, load_lattice
from .reports import checks_to_long_rows, to_csv, to_json, to_table
from .verification import DEFAULT_LATTICES, default_grid, run_grid, summarize
from .voa import require_even, voa_report

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

DET_COLUMNS = ["lattice", "n", "rank", "det_lattice", "s_value", "oracle_det", "gram_sign",
               "closed_S", "closed_2S", "matches", "index_a_b", "sublattice_transfer_holds"]
VOA_COLUMNS = ["lattice", "n", "rank", "det_lattice", "graded_rank", "shell_counts", "oracle_det",
               "full_gram_det", "gram_sign", "closed_S", "closed_2S", "matches", "oracles_agree"]
SNK_COLUMNS = ["k", "n", "S", "b", "index_literal", "index_weighted"]
CHECK_COLUMNS = ["check", "name", "params", "key", "value"]


def _modes(arg: str) -> List[str]:
    return list(MODES) if arg == "both" else [arg]


def _restrict(row: Dict[str, object], modes: Sequence[str]) -> Dict[str, object]:
    row = dict(row)
    row["matches"] = [m for m in row["matches"] if m in modes]
    for m in MODES:
        if m not in modes:
            row.pop(f"closed_{m}", None)
    return row


def _columns(columns: Sequence[str], modes: Sequence[str]) -> List[str]:
    return [c for c in columns if not (c.startswith("closed_") and c[len("closed_"):] not in modes)]


def _emit(args, rows, columns, payload=None) -> None:
    if args.format == "json":
        text = to_json(payload if payload is not None else rows)
    elif args.format == "csv":
        text = to_csv(rows, columns)
    else:
        text = to_table(rows, columns)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))


def cmd_snk(args) -> int:
    if args.k < 1 or args.n_max < 0:
        print("error: need --k >= 1 and --n-max >= 0", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    for n in range(args.n_max + 1):
        rows.append({
            "k": args.k,
            "n": n,
            "S": comb.s_value(args.k, n),
            "b": comb.b_value(n),
            "index_literal": comb.index_formula_value(args.k, n),
            "index_weighted": comb.index_formula_weighted(args.k, n),
        })
    _emit(args, rows, SNK_COLUMNS)
    return EXIT_OK


def _det_row(lat, n, budget):
    report = det_report(lat, n, budget).to_dict()
    report["sublattice_transfer_holds"] = report["sublattice_transfer"].get("holds") if report["sublattice_transfer"] else None
    return report


def cmd_det_m1(args) -> int:
    lat = load_lattice(args.lattice)
    modes = _modes(args.mode)
    try:
        rows = _map(_det_row, [(lat, n, args.budget) for n in range(args.n_max + 1)], args.jobs)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    rows = [_restrict(r, modes) for r in rows]
    _emit(args, rows, _columns(DET_COLUMNS, modes))
    return EXIT_OK if all(r["matches"] for r in rows) else EXIT_MISMATCH


def _voa_row(lat, n, budget):
    return voa_report(lat, n, budget).to_dict()


def cmd_det_voa(args) -> int:
    lat = load_lattice(args.lattice)
    require_even(lat)
    modes = _modes(args.mode)
    try:
        rows = _map(_voa_row, [(lat, n, args.budget) for n in range(args.n_max + 1)], args.jobs)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    rows = [_restrict(r, modes) for r in rows]
    _emit(args, rows, _columns(VOA_COLUMNS, modes))
    ok = all(r["matches"] and r["oracles_agree"] for r in rows)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify_all(args) -> int:
    names = args.lattice or list(DEFAULT_LATTICES)
    for name in names:
        if name not in BUILTIN_LATTICES:
            raise LatticeError(f"verify-all takes built-in lattice names, got {name!r}")
    grid = default_grid(k_max=args.k_max, n_max=args.n_max, lattices=names)
    results = run_grid(grid, budget=args.budget, jobs=args.jobs)
    summary = summarize(results)
    payload = {"summary": summary, "checks": [r.to_dict() for r in results]}
    _emit(args, checks_to_long_rows(results), CHECK_COLUMNS, payload)
    return EXIT_OK if summary["all_passed"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voadet",
        description="Exact Gram determinants of integral forms in lattice VOAs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="table"):
        p.add_argument("--format", choices=("json", "csv", "table"), default=default_format)
        p.add_argument("--out", help="write the report here instead of stdout")

    def engine(p):
        p.add_argument("--n-max", type=int, default=2)
        p.add_argument("--mode", choices=("S", "2S", "both"), default="both")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="largest graded-piece dimension to attempt")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("snk", help="table of S(k,n), b_n and the index formula")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, default=6)
    common(p)
    p.set_defaults(func=cmd_snk)

    p = sub.add_parser("det-m1", help="determinants of A_L(n) against the closed forms")
    p.add_argument("--lattice", required=True, help="built-in name or JSON file")
    engine(p)
    common(p)
    p.set_defaults(func=cmd_det_m1)

    p = sub.add_parser("det-voa", help="determinants of the graded pieces of (V_L)_Z")
    p.add_argument("--lattice", required=True, help="built-in name or JSON file")
    engine(p)
    common(p)
    p.set_defaults(func=cmd_det_voa)

    p = sub.add_parser("verify-all", help="run the full grid of checks")
    p.add_argument("--lattice", action="append", help="built-in lattice (repeatable)")
    p.add_argument("--k-max", type=int, default=2)
    engine(p)
    p.set_defaults(n_max=4)
    common(p, default_format="json")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n_max", 0) < 0 or getattr(args, "budget", 1) < 1 or getattr(args, "jobs", 1) < 1:
        parser.error("--n-max must be >= 0, --budget and --jobs >= 1")
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed lattice JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_USAGE
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
