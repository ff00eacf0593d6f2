"""Command-line interface: ``k3i19 {trace,table,zeta,fibers,verify,lattice}``.

Exit codes: 0 when every requested check passes, 1 on a failed
verification, 2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import hecke, lattice, surface
from .pointcount import BadPrimeError, TraceCache, default_cache, trace_T

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Published values of (trace Frob, trace Frob^2) on the transcendental part.
PUBLISHED_TABLE = {
    3: (0, -18), 5: (-9, 31), 7: (-5, -73), 11: (3, -233), 13: (0, -338),
    17: (15, -353), 23: (-30, -158), 29: (0, -1682), 31: (0, -1922),
    37: (0, -2738), 41: (0, -3362), 43: (-85, 3527),
}

TABLE_FIELDS = ["p", "trace1", "trace2", "trace_hecke", "split"]


class UsageError(Exception):
    pass


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def render(records, fmt: str, fields: list[str] | None = None) -> str:
    """Render one record (dict) or a list of records."""
    if fmt == "json":
        return json.dumps(_jsonable(records), indent=2, sort_keys=False)
    rows = records if isinstance(records, list) else [records]
    fields = fields or list(rows[0].keys()) if rows else (fields or [])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in fields})
        return buf.getvalue().rstrip("\n")
    if fmt == "markdown":
        lines = ["| " + " | ".join(fields) + " |", "|" + "|".join("---" for _ in fields) + "|"]
        for row in rows:
            lines.append("| " + " | ".join(_cell(row.get(k)) for k in fields) + " |")
        return "\n".join(lines)
    raise UsageError(f"unknown format {fmt!r}")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(_jsonable(v))
    return str(v)


def _cache(args) -> TraceCache | None:
    return TraceCache(args.cache) if args.cache else default_cache()


def cmd_trace(args) -> tuple[dict, int]:
    if args.n not in (1, 2):
        raise UsageError("--n must be 1 or 2")
    res = trace_T(args.p, args.n, cache=_cache(args), workers=args.workers)
    expected = hecke.hecke_trace(args.p, args.n)
    record = {
        "p": args.p,
        "n": args.n,
        "trace_pointcount": res.trace,
        "trace_hecke": expected if args.n == 1 else None,
        "agree": res.trace == expected,
        "count": res.count,
        "model": res.model_used,
    }
    return record, EXIT_OK if record["agree"] else EXIT_FAIL


def table_rows(p_max: int, *, cache=None, workers: int = 1) -> list[dict]:
    rows = []
    for p in hecke.good_primes(p_max):
        t1 = trace_T(p, 1, cache=cache, workers=workers).trace
        t2 = trace_T(p, 2, cache=cache, workers=workers).trace
        split = hecke.is_split(p)
        row = {
            "p": p,
            "trace1": t1,
            "trace2": t2,
            "trace_hecke": hecke.charpoly_T(p).trace,
            "split": split,
            "agree": t1 == hecke.charpoly_T(p).trace,
            "trace2_hecke": hecke.hecke_trace(p, 2),
        }
        if p in PUBLISHED_TABLE:
            pub1, pub2 = PUBLISHED_TABLE[p]
            row["published_trace2"] = pub2
            row["paper_table_sign_matches"] = _sign(t2) == _sign(pub2)
        rows.append(row)
    return rows


def cmd_table(args):
    if args.p_max < 3:
        raise UsageError("--p-max must be at least 3")
    rows = table_rows(args.p_max, cache=_cache(args), workers=args.workers)
    code = EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAIL
    return rows, code


def cmd_zeta(args):
    z = hecke.zeta(args.p)
    record = {
        "p": args.p,
        "split": hecke.is_split(args.p),
        "zeta": str(z),
        "factors": [{"coefficients": list(f), "multiplicity": m} for f, m in z.factors],
        "picard_rank": hecke.picard_rank(args.p),
        "count_1": z.count(1),
        "count_2": z.count(2),
    }
    return record, EXIT_OK


def cmd_fibers(args):
    if args.model not in surface.MODELS:
        raise UsageError(f"unknown model {args.model!r}")
    model = surface.MODELS[args.model]()
    if args.model == "char3":
        model = surface.reduce_model(model, 3)
    elif args.p is not None and args.model == "canonical":
        model = surface.reduce_model(model, args.p)
    fibers = surface.classify_fibers(model)
    rows = [
        {
            "place": "inf" if f.place is None else f.place.pretty(),
            "kind": f.kind,
            "components": f.components,
            "euler": f.euler,
            "split": f.split,
            "count": f.count,
        }
        for f in fibers
    ]
    total = sum(f.euler * f.count for f in fibers)
    return rows, EXIT_OK if total == surface.K3_EULER else EXIT_FAIL


def cmd_verify(args):
    if args.p_max < 31:
        raise UsageError("--p-max must be at least 31 to include the witness primes")
    try:
        report = hecke.consistency_check(args.p_max, workers=args.workers, cache=_cache(args))
    except hecke.ConsistencyError as exc:
        report = dict(exc.report, failures=[r for r in exc.report["primes"] if not r["agree"]])
        return report, EXIT_FAIL
    return report, EXIT_OK


def cmd_lattice(args):
    bundles = {"verify-p3": lattice.verify_p3, "verify-p19": lattice.verify_p19}
    report = bundles[args.task]()
    return report, EXIT_OK if report["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    common.add_argument("--cache", help="trace cache file (default: $K3I19_CACHE)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="k3i19", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="Frobenius trace by point counting")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("table", parents=[common], help="trace table for good primes")
    p.add_argument("--p-max", type=int, default=43)
    p.set_defaults(func=cmd_table, fields=TABLE_FIELDS)

    p = sub.add_parser("zeta", parents=[common], help="local zeta function")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("fibers", parents=[common], help="singular fibres of a model")
    p.add_argument("--model", choices=sorted(surface.MODELS), default="canonical")
    p.add_argument("--p", type=int, help="reduce the canonical model mod p first")
    p.set_defaults(func=cmd_fibers)

    p = sub.add_parser("verify", parents=[common], help="point counts vs closed form")
    p.add_argument("--p-max", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lattice", parents=[common], help="supersingular lattice checks")
    p.add_argument("task", choices=["verify-p3", "verify-p19"])
    p.set_defaults(func=cmd_lattice)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.workers < 1:
        parser.error("--workers must be positive")
    try:
        result, code = args.func(args)
    except (BadPrimeError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(result, args.format, getattr(args, "fields", None)))
    return code


if __name__ == "__main__":
    sys.exit(main())
