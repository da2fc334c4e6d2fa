"""Command-line driver: ``grasstoric <command> [options]``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import report as rp
from .ladder import Partition, build_ladder_quiver


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _add_case(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--r", type=int, required=True, help="subspace dimension")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasstoric",
        description="Construct and check toric degenerations of Grassmannians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polytopes", help="P, its dual, the primitive dual and pairings")
    _add_case(p)
    _add_output(p)

    p = sub.add_parser("group", help="G, G_h and the image of H")
    _add_case(p)
    p.add_argument("--brute-force", action="store_true", help="also enumerate all of G")
    _add_output(p)

    p = sub.add_parser("relations", help="Pluecker relations, coefficient weights and the box equation")
    _add_case(p)
    _add_output(p)

    p = sub.add_parser("fan", help="blow up the spanning fan and compare with the primitive dual")
    _add_case(p)
    p.add_argument(
        "--order",
        default="lex",
        help="'lex', or a JSON file holding a list of excess partitions",
    )
    _add_output(p)

    p = sub.add_parser("mirror", help="superpotential, compactification and periods")
    _add_case(p)
    p.add_argument("--max-order", type=_positive, default=6)
    _add_output(p)

    p = sub.add_parser("verify-all", help="every suite on every case up to --max-n")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-order", type=_positive, default=6)
    p.add_argument("--details", action="store_true", help="include constructed data in JSON")
    _add_output(p)
    return parser


def _read_order(text: str, n: int, r: int) -> list[Partition] | None:
    if text == "lex":
        return None
    path = Path(text)
    if not path.is_file():
        raise ValueError(f"order must be 'lex' or a file, got {text!r}")
    raw = json.loads(path.read_text())
    order = [tuple(int(x) for x in p) for p in raw]
    excess = build_ladder_quiver(n, r).excess_set
    if sorted(order) != sorted(excess) or len(set(order)) != len(order):
        raise ValueError("order file must list each excess partition exactly once")
    return order


def _render(reports: list[rp.VerificationReport], fmt: str, timing: bool, details: bool, single: bool) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(rp.CSV_HEADER)
        for rep in reports:
            w.writerows(rep.csv_rows())
        return buf.getvalue()
    if single:
        doc = reports[0].to_json(timing=timing, details=details)
    else:
        doc = {
            "status": "pass" if all(r.passed for r in reports) else "fail",
            "reports": [r.to_json(timing=timing, details=details) for r in reports],
        }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Parse ``argv``, run the command, and return the exit code with the rendered report.

    The report is also written to ``--out`` when given.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify-all":
        if args.max_n < 4:
            parser.error("--max-n must be at least 4")
        reports = rp.verify_all(args.max_n, args.max_order)
        single, details = False, args.details
    else:
        if not 2 <= args.r <= args.n - 2:
            parser.error("need 2 <= r <= n - 2")
        n, r = args.n, args.r
        start = time.perf_counter()
        if args.command == "polytopes":
            rep = rp.polytopes_suite(n, r)
        elif args.command == "group":
            rep = rp.group_suite(n, r, args.brute_force)
        elif args.command == "relations":
            rep = rp.relations_suite(n, r)
        elif args.command == "fan":
            try:
                order = _read_order(args.order, n, r)
            except (ValueError, json.JSONDecodeError, TypeError) as exc:
                parser.error(str(exc))
            rep = rp.fan_suite(n, r, order)
        else:
            rep = rp.mirror_suite(n, r, args.max_order)
        rep.seconds = time.perf_counter() - start
        reports, single, details = [rep], True, True
    text = _render(reports, args.format, args.timing, details, single)
    code = 0 if all(rep.passed for rep in reports) else 1
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    return code, text


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, text = run(argv)
    if "--out" not in argv and not any(a.startswith("--out=") for a in argv):
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
