"""Command-line interface.

Exit codes: 0 success, 1 claim verification failed, 2 usage or input error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .expr import ExprError
from .grchow import MODES, DegreeError, GrContext, gr_integrate, parse_class_expr
from .motive import (
    ParamError,
    TripleParams,
    TripleReport,
    audit_triple,
    scan,
    scan_triples,
    verify_claims,
)

CSV_COLUMNS = (
    "n",
    "d",
    "kappa",
    "rank_qe",
    "dim_gr",
    "s_excess",
    "m",
    "condition_b",
    "osculating_count",
    "elv_sufficient",
    "intro_bound",
)

EXIT_OK, EXIT_CLAIMS, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class ReportCache:
    """JSON file of triple reports keyed by (n, d, kappa, version)."""

    def __init__(self, path: Path | None):
        self.path = path
        self.entries: dict[str, dict] = {}
        self.dirty = False
        if path is not None and path.exists():
            data = json.loads(path.read_text(encoding="utf-8"))
            if data.get("version") == __version__:
                self.entries = data.get("reports", {})

    @staticmethod
    def key(n: int, d: int, kappa: int) -> str:
        return f"{n},{d},{kappa},{__version__}"

    def get(self, n, d, kappa) -> TripleReport | None:
        if self.path is None:
            return None
        entry = self.entries.get(self.key(n, d, kappa))
        return None if entry is None else TripleReport.from_json(entry)

    def put(self, report: TripleReport) -> None:
        if self.path is None:
            return
        self.entries[self.key(report.n, report.d, report.kappa)] = report.to_json()
        self.dirty = True

    def save(self) -> None:
        if self.path is None or not self.dirty:
            return
        payload = {"version": __version__, "reports": dict(sorted(self.entries.items()))}
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(payload, indent=1, sort_keys=True), encoding="utf-8")
        os.replace(tmp, self.path)


def _params(args) -> TripleParams:
    try:
        return TripleParams(args.n, args.d, args.kappa)
    except ParamError as exc:
        flag = "--kappa" if "kappa" in str(exc).split()[0] else "--d" if str(exc).startswith("d ") else "--n"
        raise UsageError(f"{flag}: {exc}") from None


def _reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        row = r.to_json()
        writer.writerow(["" if row[c] is None else str(row[c]).lower() if isinstance(row[c], bool) else row[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def _report_text(r: TripleReport) -> str:
    data = r.to_json()
    lines = []
    for key, value in data.items():
        if isinstance(value, list):
            value = " ".join(value)
        lines.append(f"{key:18s} {value}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cached_audit(params: TripleParams, mode: str, cache: ReportCache) -> TripleReport:
    report = cache.get(params.n, params.d, params.kappa)
    if report is None:
        report = audit_triple(params, mode)
        cache.put(report)
    return report


def cmd_compute(args) -> int:
    params = _params(args)
    cache = ReportCache(Path(args.cache) if args.cache else None)
    report = _cached_audit(params, args.mode, cache)
    cache.save()
    if args.format == "json":
        _emit(json.dumps(report.to_json(), indent=2) + "\n", None)
    elif args.format == "csv":
        _emit(_reports_to_csv([report]), None)
    else:
        _emit(_report_text(report), None)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.kappa_min < 1 or args.kappa_min > args.kappa_max:
        raise UsageError("--kappa-min/--kappa-max: need 1 <= kappa-min <= kappa-max")
    if args.d_min < 1 or args.d_min > args.d_max:
        raise UsageError("--d-min/--d-max: need 1 <= d-min <= d-max")
    if args.n_max < args.kappa_min + 1:
        raise UsageError("--n-max: range contains no triple")
    if args.jobs < 1:
        raise UsageError("--jobs: must be >= 1")
    triples = list(
        scan_triples(range(args.kappa_min, args.kappa_max + 1), range(args.d_min, args.d_max + 1), args.n_max)
    )
    cache = ReportCache(Path(args.cache) if args.cache else None)
    known = {t: cache.get(*t) for t in triples}
    todo = [t for t, r in known.items() if r is None]
    for report in scan(todo, args.mode, args.jobs):
        cache.put(report)
        known[(report.n, report.d, report.kappa)] = report
    cache.save()
    reports = sorted(known.values(), key=lambda r: (r.kappa, r.d, r.n))
    if args.format == "csv":
        text = _reports_to_csv(reports)
    else:
        text = json.dumps([r.to_json() for r in reports], indent=1) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs: must be >= 1")
    try:
        result = verify_claims(args.kappa_max, args.d_max, args.n_max, args.mode, args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(json.dumps(result.to_json(), indent=1) + "\n", None)
    else:
        lines = []
        for c in result.claims:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status}  {c.claim_id:20s} {c.computed}")
            for f in c.failures:
                lines.append(f"      counterexample {f}")
        diag = result.diagnostics
        lines.append(f"scanned {diag['triples_scanned']} triples ({diag['triples_with_nonnegative_excess']} with s >= 0)")
        lines.append(f"d > 2 counterexamples to (s >= 0 => criterion): {diag['d_gt_2_counterexamples'] or 'none'}")
        lines.append(f"nonpositive osculating counts: {diag['nonpositive_osculating_counts'] or 'none'}")
        _emit("\n".join(lines) + "\n", None)
    return EXIT_OK if result.passed else EXIT_CLAIMS


def cmd_betas(args) -> int:
    params = _params(args)
    report = audit_triple(params, args.mode)
    if report.betas is None:
        reason = "s < 0" if params.s_excess < 0 else "m = 0"
        raise UsageError(f"betas undefined for (n={params.n}, d={params.d}, kappa={params.kappa}): {reason}")
    if args.format == "json":
        payload = {
            "n": params.n,
            "d": params.d,
            "kappa": params.kappa,
            "m": str(report.m),
            "betas": [str(b) for b in report.betas],
        }
        _emit(json.dumps(payload, indent=2) + "\n", None)
    else:
        _emit("".join(f"beta_{i} = {b}\n" for i, b in enumerate(report.betas)), None)
    return EXIT_OK


def cmd_integrate(args) -> int:
    try:
        ctx = GrContext(args.n, args.kappa)
    except ValueError as exc:
        raise UsageError(f"--n/--kappa: {exc}") from None
    try:
        x = parse_class_expr(ctx, args.expr)
    except ExprError as exc:
        raise UsageError(f"--expr: {exc}") from None
    if x.degree != ctx.dim_gr:
        degs = ", ".join(map(str, sorted(x.degrees)))
        raise UsageError(f"--expr: class has degree {degs}, but integration needs degree {ctx.dim_gr}")
    if args.mode == "both":
        schur = gr_integrate(ctx, x, "schur")
        oracle = gr_integrate(ctx, x, "oracle")
        if schur != oracle:
            raise AssertionError(f"schur={schur} oracle={oracle}")
        _emit(f"schur {schur}\noracle {oracle}\n", None)
    else:
        _emit(f"{gr_integrate(ctx, x, args.mode)}\n", None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oscplanes", description="Exact Grassmannian intersection numbers for osculating planes.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def triple(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--kappa", type=int, required=True)

    p = sub.add_parser("compute", help="all invariants of one triple")
    triple(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--mode", choices=MODES, default="schur")
    p.add_argument("--cache", help="JSON cache file")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("scan", help="invariants over a range of triples")
    p.add_argument("--kappa-min", type=int, required=True)
    p.add_argument("--kappa-max", type=int, required=True)
    p.add_argument("--d-min", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mode", choices=MODES, default="schur")
    p.add_argument("--cache", help="JSON cache file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-claims", help="check the quoted statements about the criterion")
    p.add_argument("--kappa-max", type=int, default=4)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--mode", choices=MODES, default="both")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("betas", help="coefficients of a_{n-1}")
    triple(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--mode", choices=MODES, default="schur")
    p.set_defaults(func=cmd_betas)

    p = sub.add_parser("integrate", help="integrate a class expression over the Grassmannian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--mode", choices=MODES, default="schur")
    p.set_defaults(func=cmd_integrate)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand (compute, scan, verify-claims, betas, integrate)")
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as exc:
        print(f"oscplanes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegreeError as exc:
        print(f"oscplanes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"oscplanes: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
