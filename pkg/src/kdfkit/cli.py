"""Command-line front end.

Subcommands: ``eval``, ``verify``, ``sweep``, ``tables`` and ``list``.

Exit codes
----------
0  success (``eval``: a trusted value; ``verify``: Pass)
1  malformed input, unknown id or bad config
2  Inconclusive
3  Fail (``verify`` only)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Sequence

from . import __version__, catalog, theorems
from .errors import KdfError
from .series import (
    DEFAULT_MAX_INDEX,
    DEFAULT_MAX_TERMS,
    DEFAULT_REL_TOL,
    EvalResult,
    KdFSpec,
    PFQSpec,
    eval_2f1,
    eval_appell_f3,
    eval_kdf,
    eval_pfq,
)
from .verify import (
    DEFAULT_TOLERANCE,
    SweepConfig,
    SweepResult,
    Verdict,
    VerificationRecord,
    run_sweep,
    verify_one,
)

SCHEMA = "kdfkit/1"
EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_FAIL = 0, 1, 2, 3

# table letter -> (family, position in the coefficient pair)
TABLE_LETTERS = {
    "A": (theorems.Family.KUMMER, 0),
    "B": (theorems.Family.KUMMER, 1),
    "C": (theorems.Family.GAUSS2, 0),
    "D": (theorems.Family.GAUSS2, 1),
    "E": (theorems.Family.BAILEY, 0),
    "F": (theorems.Family.BAILEY, 1),
}


class UsageError(Exception):
    """Malformed command-line input."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for Inconclusive here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_list(text: str) -> list[float]:
    """Comma-separated decimals; the empty string is the empty list."""
    text = text.strip()
    if not text:
        return []
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


# ---------------------------------------------------------------------------
# serialization


def _num(x: float) -> float | None:
    """JSON has no NaN or infinity; those become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def result_to_dict(r: EvalResult) -> dict:
    return {
        "value": _num(r.value),
        "abs_error_estimate": _num(r.abs_error_estimate),
        "terms_used": int(r.terms_used),
        "status": r.status.value,
        "reason": r.reason,
    }


def record_to_dict(rec: VerificationRecord) -> dict:
    return {
        "id": rec.id,
        "i": rec.i,
        "params": {k: float(v) for k, v in rec.params.items()},
        "interpretation": rec.interpretation,
        "lhs": result_to_dict(rec.lhs),
        "rhs": result_to_dict(rec.rhs),
        "rel_err": _num(rec.rel_err),
        "verdict": rec.verdict.value,
        "reason": rec.reason,
        "alternatives": {
            name: {"rhs": result_to_dict(r), "rel_err": _num(e), "verdict": v.value}
            for name, (r, e, v) in rec.alternatives.items()
        },
    }


def report_document(result: SweepResult, timing: dict | None = None) -> dict:
    """The JSON report of a sweep.

    ``timing`` is null unless requested, so that equal configs give
    byte-identical documents.
    """
    summary = []
    for s in result.summary:
        ident = catalog.get_identity(s.id)
        summary.append({
            "id": s.id,
            "route": ident.route,
            "interpretation": s.interpretation,
            "pass": s.passed,
            "fail": s.failed,
            "inconclusive": s.inconclusive,
            "conclusive": s.conclusive,
            "pass_rate": s.pass_rate,
            "verified": s.verified,
            "suspected_misprint": s.suspected_misprint,
            "interpretations": {
                name: {"pass": p, "fail": f, "inconclusive": n}
                for name, (p, f, n) in s.by_interpretation.items()
            },
            "passing_interpretations": s.passing_interpretations(),
            "note": ident.note,
        })
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": result.config.to_dict(),
        "records": [record_to_dict(r) for r in result.records],
        "summary": summary,
        "timing": timing,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def report_csv(result: SweepResult) -> str:
    """One row per record: id, i, the bound symbols, lhs, rhs, rel_err, verdict."""
    symbols = [s for s in catalog.SYMBOLS if any(s in r.params for r in result.records)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "i", *symbols, "lhs", "rhs", "rel_err", "verdict"])
    for r in result.records:
        w.writerow([r.id, r.i, *[repr(r.params[s]) if s in r.params else "" for s in symbols],
                    repr(r.lhs.value), repr(r.rhs.value), repr(r.rel_err), r.verdict.value])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _print_result(r: EvalResult, fmt: str) -> int:
    if fmt == "json":
        sys.stdout.write(dumps({"schema": SCHEMA, **result_to_dict(r)}))
    else:
        print(f"value: {r.value!r}")
        print(f"terms_used: {r.terms_used}")
        print(f"status: {r.status.value}")
        print(f"abs_error_estimate: {r.abs_error_estimate!r}")
        if r.reason:
            print(f"reason: {r.reason}")
    return EXIT_OK if r.trusted else EXIT_INCONCLUSIVE


def cmd_eval(args) -> int:
    if args.kind == "pfq":
        r = eval_pfq(PFQSpec(args.num, args.den, args.z), args.rel_tol, args.max_terms)
    elif args.kind == "2f1":
        r = eval_2f1(args.a, args.b, args.c, args.z, args.rel_tol,
                     transform=not args.no_transform, max_terms=args.max_terms)
    elif args.kind == "kdf":
        spec = KdFSpec(args.h, args.g, args.a, args.b, args.c, args.d, args.x, args.y)
        r = eval_kdf(spec, args.rel_tol, args.max_index)
    else:
        r = eval_appell_f3(args.a, args.a2, args.b, args.b2, args.c, args.x, args.y,
                           args.rel_tol, args.max_index)
    return _print_result(r, args.format)


def cmd_verify(args) -> int:
    params = {s: getattr(args, s) for s in catalog.SYMBOLS if getattr(args, s) is not None}
    inst = catalog.IdentityInstance(args.id, args.i, params)
    rec = verify_one(inst, args.tol, args.rel_tol, args.interpretation)
    sys.stdout.write(dumps({"schema": SCHEMA, **record_to_dict(rec)}))
    return {Verdict.PASS: EXIT_OK, Verdict.FAIL: EXIT_FAIL, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[rec.verdict]


def load_config(path: str) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    try:
        return SweepConfig.from_dict(data)
    except (TypeError, ValueError, KeyError) as exc:
        raise UsageError(f"invalid config: {exc}") from None


def sweep_config(args) -> SweepConfig:
    if args.config:
        return load_config(args.config)
    if args.all == bool(args.ids):
        raise UsageError("give exactly one of --all, --ids or --config")
    ids = "all" if args.all else tuple(t.strip() for t in args.ids.split(",") if t.strip())
    try:
        return SweepConfig(ids, args.imax, args.samples, args.seed, args.tol, args.rel_tol)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


def cmd_sweep(args) -> int:
    config = sweep_config(args)
    t0 = time.perf_counter()
    result = run_sweep(config)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        _emit(report_csv(result), args.out)
    else:
        timing = {"seconds": elapsed, "records": len(result.records)} if args.timing else None
        _emit(dumps(report_document(result, timing)), args.out)
    return EXIT_OK


def cmd_tables(args) -> int:
    fam, pos = TABLE_LETTERS[args.which]
    print(f"# {args.which}_i({args.a:g}, {args.b:g}), {fam.value} table ({args.table})")
    for i in range(-5, 6):
        v = theorems.lavoie_coefficients(fam, i, args.a, args.b, args.table)[pos]
        print(f"{i:3d}  {v:.12g}")
    return EXIT_OK


def cmd_list(args) -> int:
    rows = catalog.list_identities()
    if args.format == "json":
        doc = {"schema": SCHEMA, "identities": [
            {"id": id, "free": sorted(free, key=catalog.SYMBOLS.index), "arguments": list(xy), "route": route,
             "interpretations": list(catalog.get_identity(id).interpretations)}
            for id, free, xy, route in rows]}
        sys.stdout.write(dumps(doc))
    else:
        for id, free, xy, route in rows:
            names = ",".join(sorted(free, key=catalog.SYMBOLS.index))
            print(f"{id:9s} ({xy[0]}, {xy[1]})  free={names}  {route}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kdfkit", description="Evaluate Kampé de Fériet and related series; verify summation identities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate a series")
    kinds = ev.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    def common(sp, index=False):
        sp.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
        if index:
            sp.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
        else:
            sp.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = kinds.add_parser("pfq", help="generalized hypergeometric pFq")
    sp.add_argument("--num", type=parse_list, required=True, help="numerator parameters, comma-separated")
    sp.add_argument("--den", type=parse_list, required=True, help="denominator parameters, comma-separated")
    sp.add_argument("--z", type=float, required=True)
    common(sp)

    sp = kinds.add_parser("2f1", help="Gauss 2F1(a, b; c; z)")
    for name in ("a", "b", "c", "z"):
        sp.add_argument(f"--{name}", type=float, required=True)
    sp.add_argument("--no-transform", action="store_true", help="sum directly also for z < 0")
    common(sp)

    sp = kinds.add_parser("kdf", help="Kampé de Fériet double series")
    for name in ("h", "g", "a", "b", "c", "d"):
        sp.add_argument(f"--{name}", type=parse_list, default=[])
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--y", type=float, required=True)
    common(sp, index=True)

    sp = kinds.add_parser("f3", help="Appell F3(a, a2, b, b2; c; x, y)")
    for name in ("a", "a2", "b", "b2", "c", "x", "y"):
        sp.add_argument(f"--{name}", type=float, required=True)
    common(sp, index=True)

    vp = sub.add_parser("verify", help="verify one identity instance")
    vp.add_argument("id")
    vp.add_argument("--i", type=int, default=0)
    for s in catalog.SYMBOLS:
        vp.add_argument(f"--{s}", type=float)
    vp.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    vp.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    vp.add_argument("--interpretation", default=None)

    swp = sub.add_parser("sweep", help="seeded verification sweep")
    swp.add_argument("--config", help="JSON file with SweepConfig fields")
    swp.add_argument("--all", action="store_true")
    swp.add_argument("--ids", default="", help="comma-separated identity ids")
    swp.add_argument("--imax", type=int, default=0)
    swp.add_argument("--samples", type=int, default=25)
    swp.add_argument("--seed", type=int, default=0)
    swp.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    swp.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    swp.add_argument("--format", choices=("json", "csv"), default="json")
    swp.add_argument("--out")
    swp.add_argument("--timing", action="store_true", help="add wall-clock timing to the JSON report")

    tp = sub.add_parser("tables", help="coefficient tables for -5 <= i <= 5")
    tp.add_argument("which", choices=sorted(TABLE_LETTERS))
    tp.add_argument("--a", type=float, required=True)
    tp.add_argument("--b", type=float, required=True)
    tp.add_argument("--table", choices=theorems.TABLE_CHOICES, default="printed")

    lp = sub.add_parser("list", help="registered identities")
    lp.add_argument("--format", choices=("text", "json"), default="text")
    return p


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "sweep": cmd_sweep, "tables": cmd_tables, "list": cmd_list}


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return COMMANDS[args.command](args)
    except BrokenPipeError:
        # output closed early, e.g. piped into head
        sys.stderr.close()
        return EXIT_OK
    except (UsageError, KdfError, KeyError, ValueError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args and not isinstance(exc, KdfError) else exc
        print(f"kdfkit: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
