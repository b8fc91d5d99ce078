"""Command-line front end: ``tangle-tqft {eval,invariant,check,kz,parse}``.

Results go to standard output and diagnostics to standard error. Exit codes:
0 success, 1 parse error, 2 validation error (including a link invariant
asked of an open tangle without ``--closure``), 3 a check that ran and failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cobord1 import BoundaryError, Matching1, tqft1_eval
from .evaluator import default_theory, eval_diagram, link_invariant
from .parser import DiagramSource, DiagramValidationError, ParseError, parse_braid, serialize, serialize_braid
from .ring import RingMatrix
from .tangle import SlicedDiagram, closure

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CHECK = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_seed() -> int:
    raw = os.environ.get("TANGLE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"TANGLE_SEED must be an integer, got {raw!r}", EXIT_PARSE) from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def _matrix_json(m: RingMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[str(x) for x in row] for row in m.to_rows()]}


def _source(args: argparse.Namespace) -> DiagramSource:
    if args.braid is not None:
        return DiagramSource("braid", args.braid, "<--braid>")
    if args.sliced is not None:
        if args.sliced == "-":
            return DiagramSource("sliced", sys.stdin.read(), "<stdin>")
        try:
            return DiagramSource.from_file(args.sliced)
        except OSError as exc:
            raise CliError(f"cannot read {args.sliced}: {exc.strerror}", EXIT_PARSE) from None
    raise CliError("no input: give --braid or --sliced", EXIT_PARSE)


def _load(args: argparse.Namespace) -> SlicedDiagram:
    src = _source(args)
    try:
        d = src.parse(args.orientation)
    except DiagramValidationError as exc:
        raise CliError(f"{src.origin}: {exc}", EXIT_INVALID) from None
    except ParseError as exc:
        raise CliError(f"{src.origin}: {exc}", EXIT_PARSE) from None
    if getattr(args, "closure", None):
        try:
            d = closure(d, args.closure)
        except ValueError as exc:
            raise CliError(f"cannot close diagram: {exc}", EXIT_INVALID) from None
    return d


# ---------------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    if args.matching is not None:
        try:
            m = Matching1.parse(args.matching)
        except (ValueError, BoundaryError) as exc:
            raise CliError(f"bad matching: {exc}", EXIT_PARSE) from None
        result = tqft1_eval(m, args.dim)
    else:
        result = eval_diagram(_load(args), default_theory())
    if args.format == "json":
        print(_dump({"schema": 1, "matrix": _matrix_json(result)}))
    else:
        print(result)
    return EXIT_OK


def cmd_invariant(args: argparse.Namespace) -> int:
    d = _load(args)
    if not d.is_closed():
        raise CliError(
            f"diagram is a tangle {d.source()} -> {d.target()}, not a link; pass --closure trace|plat",
            EXIT_INVALID,
        )
    rep = link_invariant(d, report_var=args.var)
    if args.format == "json":
        print(_dump({"schema": 1, **rep.to_json()}))
    else:
        print(f"bracket: {rep.bracket}")
        print(f"writhe: {rep.writhe}")
        print(f"normalized: {rep.normalized}")
        print(f"variable: {rep.variable_out}")
    if rep.fractional:
        print(f"note: exponents not divisible, normalized value left in {rep.variable_out}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    from .suites import SUITES, run_suite

    seed = args.seed if args.seed is not None else _default_seed()
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, args.samples, seed, args.max_crossings) for n in names]
    if args.format == "json":
        body = [r.to_json() for r in reports]
        print(_dump(body[0] if len(body) == 1 else {"schema": 1, "suites": body}))
    else:
        print("\n".join(r.to_text() for r in reports))
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_kz(args: argparse.Namespace) -> int:
    import numpy as np

    from .kz import ClearanceError, KZConfig, braid_path, braid_relation_check, transport

    if args.steps < 8:
        raise CliError("--steps must be at least 8", EXIT_INVALID)
    if args.relation:
        rep = braid_relation_check(KZConfig(3, args.h), args.tol, args.steps)
        print(_dump({
            "schema": 1,
            "relation": "s1 s2 s1 = s2 s1 s2",
            "passed": rep.passed,
            "difference": rep.difference,
            "tol": rep.tol,
            "error_estimates": list(rep.error_estimates),
            "steps": args.steps,
        }))
        return EXIT_OK if rep.passed else EXIT_CHECK
    try:
        word, n = parse_braid(args.braid)
    except ParseError as exc:
        raise CliError(f"<--braid>: {exc}", EXIT_PARSE) from None
    try:
        result = transport(braid_path(word, n), KZConfig(n, args.h), args.steps)
    except (ClearanceError, FloatingPointError) as exc:
        raise CliError(f"transport failed: {exc}", EXIT_INVALID) from None
    out = result.to_json()
    if args.identity_tol is not None:
        dist = float(np.linalg.norm(result.matrix - np.eye(result.matrix.shape[0]), 2))
        out["distance_to_identity"] = dist
        print(_dump(out))
        return EXIT_OK if dist < args.identity_tol else EXIT_CHECK
    print(_dump(out))
    return EXIT_OK


def cmd_parse(args: argparse.Namespace) -> int:
    src = _source(args)
    try:
        if src.format == "braid" and args.emit == "braid":
            word, n = parse_braid(src.text)
            text = serialize_braid(word, n)
        else:
            text = serialize(src.parse(args.orientation))
    except DiagramValidationError as exc:
        raise CliError(f"{src.origin}: {exc}", EXIT_INVALID) from None
    except ParseError as exc:
        raise CliError(f"{src.origin}: {exc}", EXIT_PARSE) from None
    print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser, matching: bool = False) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--braid", metavar="TEXT", help='inline braid word, e.g. "braid n=2: 1 1 1"')
    g.add_argument("--sliced", metavar="FILE", help="sliced diagram file (.tng, or .brd for braids); '-' reads stdin")
    if matching:
        g.add_argument("--matching", metavar="TEXT", help='1-cobordism, e.g. "1cob src= tgt= pairs=[] circles=1"')
    p.add_argument("--orientation", choices=("all-up", "all-down", "alternating"), default="all-up",
                   help="strand orientation for braid input")


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    ap = argparse.ArgumentParser(prog="tangle-tqft", description="Exact tangle invariants, a toy 1d TQFT and KZ transport.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a diagram or 1-cobordism to a matrix")
    _add_input(p, matching=True)
    p.add_argument("--closure", choices=("trace", "plat"))
    p.add_argument("--dim", type=int, default=2, help="strand dimension for --matching (default 2)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("invariant", help="framing-corrected, normalized link invariant")
    _add_input(p)
    p.add_argument("--closure", choices=("trace", "plat"))
    p.add_argument("--var", default="t", help="variable for the reported polynomial (t = A^-4)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--samples", type=int, help="random cases for sampled suites")
    p.add_argument("--seed", type=int, help="seed (default: $TANGLE_SEED or 0)")
    p.add_argument("--max-crossings", type=int, default=6, help="longest braid word in the oracle sweep")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kz", help="KZ parallel transport along a braid")
    p.add_argument("--braid", default="braid n=2: 1", metavar="TEXT")
    p.add_argument("--h", type=float, default=0.1, help="coupling")
    p.add_argument("--steps", type=int, default=256, help="RK4 steps per segment")
    p.add_argument("--relation", action="store_true", help="check s1 s2 s1 = s2 s1 s2 on 3 strands")
    p.add_argument("--tol", type=float, default=1e-6, help="tolerance for --relation")
    p.add_argument("--identity-tol", type=float, help="also report the distance to identity; exit 3 if not below this")
    p.set_defaults(func=cmd_kz)

    p = sub.add_parser("parse", help="parse and reserialize, reporting diagnostics")
    _add_input(p)
    p.add_argument("--emit", choices=("sliced", "braid"), default="sliced",
                   help="output format for braid input (default: the sliced diagram)")
    p.set_defaults(func=cmd_parse)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
