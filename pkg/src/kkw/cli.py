"""Command-line entry point: ``kkw compute | verify | selftest | symbols``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .pipeline import (
    SUPPORTED_DIMS,
    NoInteriorTerm,
    Path,
    compute_phi,
    enumerate_cases,
    interior_term,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_PATHS = {"full": (Path.FULL,), "transcribed": (Path.TRANSCRIBED,), "both": (Path.FULL, Path.TRANSCRIBED)}
_U64 = 2**64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text!r}")
    if not 0 <= v < _U64:
        raise argparse.ArgumentTypeError(f"seed out of range: {v}")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=_seed, default=None,
                        help="u64 seed; falls back to $KKW_SEED")
    common.add_argument("--out", default=None, help="also write the report to this file")

    p = _Parser(prog="kkw", description="Boundary terms of noncommutative residues, computed exactly.")
    p.add_argument("--version", action="version", version=f"kkw {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("compute", parents=[common], help="evaluate the boundary cases of one dimension")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--case", default=None, help="restrict to one case label")
    c.add_argument("--path", choices=tuple(_PATHS), default="full")
    c.add_argument("--jobs", type=_positive, default=1)

    v = sub.add_parser("verify", parents=[common], help="compare both paths with the reference values")
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--path", choices=tuple(_PATHS), default="both")
    v.add_argument("--jobs", type=_positive, default=1)

    s = sub.add_parser("selftest", parents=[common], help="run the oracle-equivalence suites")
    s.add_argument("--corrupt-pairing", action="store_true", help=argparse.SUPPRESS)

    sub.add_parser("symbols", parents=[common], help="print the symbol table")
    return p


def _resolve_seed(arg: int | None) -> int:
    from .selftest import DEFAULT_SEED

    if arg is not None:
        return arg
    env = os.environ.get("KKW_SEED")
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"KKW_SEED: {exc}")


def _check_dim(dim: int) -> None:
    if dim not in SUPPORTED_DIMS:
        raise UsageError(f"unsupported dimension {dim}; expected one of {list(SUPPORTED_DIMS)}")


def _meta(seed: int) -> dict:
    return {"seed": seed, "version": __version__}


# compute ---------------------------------------------------------------------

def cmd_compute(args, seed: int) -> tuple[dict, str, int]:
    _check_dim(args.dim)
    labels = [c.label for c in enumerate_cases(args.dim)]
    if args.case is not None and args.case not in labels:
        raise UsageError(f"unknown case {args.case!r} for dimension {args.dim}; expected one of {labels}")
    chosen = None if args.case is None else [args.case]
    entries = []
    totals = {}
    for path in _PATHS[args.path]:
        res = compute_phi(args.dim, path, args.jobs, chosen)
        for c in res.cases:
            entries.append({"label": c.label, "path": c.path.value, "phi": c.phi.canonical(),
                            "flags": list(c.flags)})
        totals[path.value] = res.total.canonical()
    doc = {"dim": args.dim, "entries": entries, "total": next(iter(totals.values())), "totals": totals}
    try:
        doc["interior"] = interior_term(args.dim).to_json()
    except NoInteriorTerm:
        pass
    doc["meta"] = _meta(seed)

    lines = [f"dimension {args.dim}"]
    for e in entries:
        lines.append(f"  [{e['path']}] {e['label']}: {e['phi']}")
        lines.extend(f"      flag: {f}" for f in e["flags"])
    for path, t in totals.items():
        lines.append(f"  total [{path}]: {t}")
    if "interior" in doc:
        lines.append(f"  interior: {doc['interior']['text']}")
    return doc, "\n".join(lines), EXIT_OK


# verify ----------------------------------------------------------------------

def cmd_verify(args, seed: int) -> tuple[dict, str, int]:
    from .report import verify

    _check_dim(args.dim)
    entries = [e.to_json() for e in verify(args.dim, _PATHS[args.path], args.jobs)]
    doc = {"dim": args.dim, "entries": entries, "meta": _meta(seed)}
    lines = [f"verify dimension {args.dim}"]
    for e in entries:
        lines.append(f"  [{e['path']}] {e['label']}: {e['match']} (first divergent step: {e['first_divergent_step']})")
        lines.append(f"      engine:    {e['phi']}")
        lines.append(f"      reference: {e['paper_value']}")
        for name, comp in e["components"].items():
            lines.append(f"      {name}: {comp['match']}, engine {comp['engine_value']}, "
                         f"reference {comp['paper_value']}, first divergent step {comp['first_divergent_step']}")
            lines.append(f"         engine under the alternative sphere reading: {comp['engine_value_reference_sphere']}")
        lines.extend(f"      flag: {f}" for f in e["flags"])
    return doc, "\n".join(lines), EXIT_OK


# selftest --------------------------------------------------------------------

def cmd_selftest(args, seed: int) -> tuple[dict, str, int]:
    from .selftest import run_all

    results = run_all(seed, corrupt_pairing=args.corrupt_pairing)
    ok = all(r.passed for r in results)
    doc = {"suites": [r.to_json() for r in results], "passed": ok, "meta": _meta(seed)}
    lines = [f"selftest seed {seed}"]
    for r in results:
        lines.append(f"  {'PASS' if r.passed else 'FAIL'} {r.name} ({r.checked} checks)")
        lines.extend(f"      {f}" for f in r.failures)
    lines.append("all suites passed" if ok else "selftest FAILED")
    return doc, "\n".join(lines), EXIT_OK if ok else EXIT_FAIL


# symbols ---------------------------------------------------------------------

def cmd_symbols(args, seed: int) -> tuple[dict, str, int]:
    from .symbols import symbol_table

    table = symbol_table()
    doc = {"symbols": table, "meta": _meta(seed)}
    lines = []
    for row in table:
        lines.append(f"{row['op']} degree {row['degree']}:")
        lines.append(f"  {row['expr']}")
    return doc, "\n".join(lines), EXIT_OK


_COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "selftest": cmd_selftest, "symbols": cmd_symbols}


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        seed = _resolve_seed(args.seed)
        doc, text, code = _COMMANDS[args.command](args, seed)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    except Exception as exc:  # internal failure, reported machine-readably
        return _error("internal", f"{type(exc).__name__}: {exc}", EXIT_FAIL)
    rendered = json.dumps(doc, indent=2, ensure_ascii=False) if args.format == "json" else text
    sys.stdout.write(rendered + "\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
