"""Command-line front end: classify, invariants, realize, verify."""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

from . import io
from .algebra import LieAlgebra3
from .atlas import TAGS, builtin_algebra, canonical_line, classify, reference_coframe
from .coframe import analyze_line
from .errors import CRError
from .line import ComplexLine
from .realization import realize
from .tolerances import SPHERICITY_RTOL
from .verify import format_table, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, needs_builtin: bool = False) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--group", choices=TAGS, help="built-in group tag")
    if not needs_builtin:
        src.add_argument("--algebra-file", help="JSON algebra file (basis, brackets, optional rep)")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--t", type=float, help="parameter of the canonical family")
    sel.add_argument("--line", type=float, nargs=6, metavar="X",
                     help="line literal re_a im_a re_b im_b re_c im_c")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--tol", type=float, default=None,
                   help="expert override of the relative sphericity threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crlie", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regularity, type, root pair, canonical parameter")
    _add_common(p)
    p = sub.add_parser("invariants", help="structure triple, Cartan data, sphericity")
    _add_common(p)
    p = sub.add_parser("realize", help="sample an explicit realization and report residuals")
    _add_common(p, needs_builtin=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--points", action="store_true", help="include sampled points in the JSON")
    p.add_argument("--csv", help="write sampled points to this CSV file")
    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _resolve(args) -> tuple[str, LieAlgebra3, ComplexLine, bool]:
    """(tag, algebra, line, canonical) from the request; canonical means built-in family member."""
    if getattr(args, "algebra_file", None):
        alg = io.load_algebra(args.algebra_file)
        if args.line is None:
            raise UsageError("--algebra-file needs --line")
        return "custom", alg, ComplexLine.from_literal(args.line), False
    if args.group is None:
        raise UsageError("one of --group or --algebra-file is required")
    alg = builtin_algebra(args.group)
    if args.line is not None:
        return args.group, alg, ComplexLine.from_literal(args.line), False
    if args.group in ("sl2r", "su2") and args.t is None:
        raise UsageError(f"--group {args.group} needs --t or --line")
    if args.group in ("heis", "e2") and args.t is not None:
        raise UsageError(f"--t has no meaning for --group {args.group}")
    return args.group, alg, canonical_line(args.group, args.t), True


def _text(d: dict, indent: str = "") -> str:
    out = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict):
            out.append(f"{indent}{k}:")
            out.append(_text(v, indent + "  "))
        else:
            out.append(f"{indent}{k}: {v}")
    return "\n".join(out)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(io.dumps(payload))
    else:
        print(_text(io.to_jsonable(payload)))


def cmd_classify(args) -> int:
    tag, alg, line, _ = _resolve(args)
    tol = SPHERICITY_RTOL if args.tol is None else args.tol
    rep = classify(tag, line, alg=alg, rtol=tol)
    payload = io.classification_dict(rep, tol)
    payload["line"] = io.line_dict(line)
    _emit(payload, args.format)
    return EXIT_OK


def cmd_invariants(args) -> int:
    tag, alg, line, canonical = _resolve(args)
    tol = SPHERICITY_RTOL if args.tol is None else args.tol
    adapted = reference_coframe(tag, args.t) if canonical else None
    inv = analyze_line(alg, line, adapted, rtol=tol)
    payload = io.invariants_dict(inv, tol)
    payload["line"] = io.line_dict(line)
    payload["group"] = tag
    _emit(payload, args.format)
    return EXIT_OK


def cmd_realize(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.group is None:
        raise UsageError("realize needs --group")
    tag, _, line, _ = _resolve(args)
    summary = realize(tag, line=line, samples=args.samples, seed=args.seed)
    payload = {
        "model": summary.model,
        "samples": summary.samples,
        "seed": args.seed,
        "mu": summary.mu,
        "mu_spread": summary.mu_spread,
        "max_residual": summary.max_residual,
        "tol": 1e-8,
    }
    if args.points:
        payload["points"] = summary.points
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            width = len(summary.points[0]) if summary.points else 0
            w.writerow([f"{part}{i}" for i in range(1, width + 1) for part in ("re_z", "im_z")])
            for p in summary.points:
                w.writerow([x for z in p for x in io.cnum(z)])
    _emit(payload, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all()
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(io.dumps({
            "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        }))
    else:
        print(format_table(results))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"classify": cmd_classify, "invariants": cmd_invariants, "realize": cmd_realize, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CRError, ValueError, OSError) as exc:
        print(f"crlie {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
