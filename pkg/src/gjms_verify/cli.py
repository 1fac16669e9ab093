"""Command-line entry point.

Exit codes: 0 when every identity passes, 1 when at least one fails,
2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .qcurv import NUMERIC_PAIRS
from .report import VerificationReport
from .spaces import SPACE_TAGS
from .suites import SUITES, ConfigError, RunConfig, run_verification
from .tables import FORMATS, SERIES_NAMES, TABLE_KINDS, TableError, emit_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_spaces(text: str) -> tuple[str, ...]:
    if text == "all":
        return SPACE_TAGS
    tags = tuple(t.strip() for t in text.split(",") if t.strip())
    for tag in tags:
        if tag not in SPACE_TAGS:
            raise UsageError(f"unknown space {tag!r}")
    return tags


def parse_pairs(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for item in text.split(","):
        try:
            q, p = item.split(":")
            pairs.append((int(q), int(p)))
        except ValueError:
            raise UsageError(f"bad q:p pair {item!r}") from None
    return tuple(pairs)


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "anchor", "params", "status", "witness"])
        for e in report.entries:
            params = ";".join(f"{k}={v}" for k, v in e.params.items())
            writer.writerow([e.identity, e.anchor, params, e.status, e.witness or ""])
        return buf.getvalue()
    counts = report.counts()
    lines = [
        f"suite: {report.suite}",
        f"convention: {report.to_dict()['convention']}",
        "status: " + ("pass" if report.passed else "fail"),
        "summary: " + ", ".join(f"{k}={counts[k]}" for k in ("pass", "fail", "flagged", "total")),
    ]
    for name, c in report.by_identity().items():
        lines.append(f"  {name}: pass={c['pass']} fail={c['fail']} flagged={c['flagged']}")
    for note in report.notes:
        lines.append(f"note: {note}")
    for e in report.entries:
        if e.status != "pass":
            params = " ".join(f"{k}={v}" for k, v in e.params.items())
            lines.append(f"{e.status.upper()} {e.anchor} [{params}] {e.witness or ''}".rstrip())
    return "\n".join(lines) + "\n"


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    suites = tuple(s.strip() for s in args.suite.split(",") if s.strip())
    cfg = RunConfig(
        spaces=parse_spaces(args.space),
        n_max=args.max_order,
        series_order=args.series_order,
        suites=suites or ("all",),
        numeric_pairs=parse_pairs(args.numeric_qp) if args.numeric_qp else NUMERIC_PAIRS,
        include_variants=args.variants,
        jobs=args.jobs,
    )
    report = run_verification(cfg)
    _write(render_report(report, args.format), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args) -> int:
    spaces = parse_spaces(args.space)
    if len(spaces) != 1 and args.kind != "m_coeff":
        raise UsageError("tables take a single --space")
    params = {"N": args.max_order, "space": spaces[0], "series": args.series,
              "K": args.series_order if args.series_order is not None else 2 * args.max_order + 2}
    _write(emit_table(args.kind, params, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gjms-verify",
        description="Exact verification of GJMS operator and Q-curvature identities on model spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, space_default):
        p.add_argument("--space", default=space_default,
                       help="one of %s, a comma list, or all" % ", ".join(SPACE_TAGS))
        p.add_argument("--max-order", type=int, default=6, metavar="N")
        p.add_argument("--series-order", type=int, default=None, metavar="K",
                       help="series truncation; default 2N+2")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", default=None, metavar="PATH")

    verify = sub.add_parser("verify", help="run identity suites")
    common(verify, "all")
    verify.add_argument("--suite", default="all",
                        help="comma-separated suite names or all; see 'suites'")
    verify.add_argument("--numeric-qp", default=None, metavar="q:p[,q:p...]")
    verify.add_argument("--variants", action="store_true",
                        help="also check known-inconsistent formula variants (reported as flagged)")
    verify.add_argument("--jobs", type=int, default=1)
    verify.set_defaults(func=cmd_verify)

    table = sub.add_parser("table", help="emit a coefficient or value table")
    table.add_argument("kind", choices=TABLE_KINDS)
    common(table, "sphere")
    table.add_argument("--series", choices=SERIES_NAMES, default="g")
    table.set_defaults(func=cmd_table)

    listing = sub.add_parser("suites", help="list suite names")
    listing.set_defaults(func=lambda args: print("\n".join(SUITES)) or EXIT_OK)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ConfigError, TableError) as exc:
        print(f"gjms-verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
