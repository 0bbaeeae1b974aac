"""Command-line surface: show root data, classify ideals, run surveys.

Exit codes: 0 on success, 1 when a property suite or the predicate
equivalence fails, 2 on usage errors (unknown type, unparsable roots).

Surveys classify every ideal of a type and write a JSON report
(``schema: 1``); identical invocations produce byte-identical output
except for the ``timing_seconds`` field.  Types of rank 7 and up are
refused without ``--force`` (an E8 survey classifies 25080 ideals of up to
120 roots; expect hours, not minutes).  If ``ROOTARR_CACHE_DIR`` is set,
survey records are persisted there per (type, schema, version) and reused.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .rootsystem import RootSystem, TypeLabel, build_root_system, format_root
from .ideals import Ideal, enumerate_ideals
from .classify import (
    EquivalenceViolation,
    chain_peeling_greedy,
    classify_ideal,
)
from .suites import SUITES

SCHEMA = 1


def _err(msg: str) -> None:
    print(f"rootarr: error: {msg}", file=sys.stderr)


def _load_system(type_str: str) -> RootSystem:
    return build_root_system(TypeLabel.parse(type_str))


# -- show ---------------------------------------------------------------------


def cmd_show(args) -> int:
    rs = _load_system(args.type)
    if args.format == "json":
        payload = {
            "type": str(rs.label),
            "rank": rs.rank,
            "positive_root_count": rs.nroots,
            "roots": [
                {"index": i, "coordinates": format_root(rs, i), "height": rs.heights[i]}
                for i in range(rs.nroots)
            ],
            "covers": [
                [format_root(rs, a), format_root(rs, b)] for a, b in rs.cover_pairs
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(f"type {rs.label}: rank {rs.rank}, {rs.nroots} positive roots")
    for i in range(rs.nroots):
        print(f"  {i:3d}  {format_root(rs, i):>10}  height {rs.heights[i]}")
    print("covers:")
    for a, b in rs.cover_pairs:
        print(f"  {format_root(rs, a)} -> {format_root(rs, b)}")
    return 0


# -- classify -------------------------------------------------------------------


def cmd_classify(args) -> int:
    rs = _load_system(args.type)
    ideal = Ideal.parse(rs, args.ideal)
    try:
        record = classify_ideal(ideal)
    except EquivalenceViolation as exc:
        _err(str(exc))
        return 1
    print(json.dumps(record.to_dict(rs), indent=2, sort_keys=True))
    return 0


# -- survey ---------------------------------------------------------------------

_WORKER_SYSTEM: RootSystem | None = None


def _worker_init(type_str: str) -> None:
    global _WORKER_SYSTEM
    _WORKER_SYSTEM = _load_system(type_str)


def _classify_mask(payload: tuple[int, bool]) -> tuple[int, int, dict | None, str | None, bool]:
    mask, log_greedy = payload
    rs = _WORKER_SYSTEM
    ideal = Ideal(rs, mask)
    stuck = False
    try:
        record = classify_ideal(ideal)
    except EquivalenceViolation as exc:
        return mask, ideal.size, None, str(exc), False
    if log_greedy and record.chain_peelable:
        stuck = chain_peeling_greedy(ideal) is None
    return mask, ideal.size, record.to_dict(rs), None, stuck


def run_survey(type_str: str, jobs: int = 1, log_greedy: bool = False) -> dict:
    """Classify every ideal of a type; returns the report as a dict.

    The record list is sorted canonically and is identical for serial and
    parallel runs.
    """
    rs = _load_system(type_str)
    started = time.perf_counter()
    cached = _cache_load(type_str) if not log_greedy else None
    if cached is not None:
        results = cached
    else:
        masks = [ideal.mask for ideal in enumerate_ideals(rs)]
        payloads = [(m, log_greedy) for m in masks]
        if jobs > 1:
            with ProcessPoolExecutor(
                max_workers=jobs, initializer=_worker_init, initargs=(type_str,)
            ) as pool:
                results = list(pool.map(_classify_mask, payloads, chunksize=8))
        else:
            _worker_init(type_str)
            results = [_classify_mask(p) for p in payloads]
        results.sort(key=lambda r: (r[1], r[0]))
        if not log_greedy:
            _cache_store(type_str, results)

    records = [rec for _, _, rec, _, _ in results if rec is not None]
    violations = [msg for _, _, _, msg, _ in results if msg is not None]
    greedy_stuck = sum(1 for *_, stuck in results if stuck)
    summary = {
        "total": len(records),
        "chain_peelable": sum(r["chain_peelable"] for r in records),
        "supersolvable": sum(r["supersolvable"] for r in records),
        "line_closed": sum(r["line_closed"] for r in records),
        "koszul": sum(r["koszul"] for r in records),
        "bad_ideals": sum(r["bad_ideal"] is not None for r in records),
        "non_supersolvable": sum(not r["supersolvable"] for r in records),
    }
    if log_greedy:
        summary["greedy_stuck"] = greedy_stuck
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "type": type_str,
        "ideal_count": len(records),
        "records": records,
        "summary": summary,
        "equivalence_ok": not violations,
        "violations": violations,
        "timing_seconds": round(time.perf_counter() - started, 6),
    }


def _cache_path(type_str: str) -> Path | None:
    root = os.environ.get("ROOTARR_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"survey-{type_str}-schema{SCHEMA}-v{__version__}.json"


def _cache_load(type_str: str):
    path = _cache_path(type_str)
    if path is None or not path.is_file():
        return None
    try:
        data = json.loads(path.read_text())
        return [tuple(row) for row in data["results"]]
    except (KeyError, ValueError, OSError):
        return None


def _cache_store(type_str: str, results) -> None:
    path = _cache_path(type_str)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"results": results}))


def _write_csv(report: dict, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(
        ["ideal", "size", "chain_peelable", "supersolvable", "line_closed", "koszul", "bad_ideal", "exponents"]
    )
    for r in report["records"]:
        writer.writerow(
            [
                " ".join(r["ideal"]),
                r["size"],
                r["chain_peelable"],
                r["supersolvable"],
                r["line_closed"],
                r["koszul"],
                r["bad_ideal"]["kind"] if r["bad_ideal"] else "",
                " ".join(str(e) for e in r["exponents"]) if r["exponents"] else "",
            ]
        )


def cmd_survey(args) -> int:
    label = TypeLabel.parse(args.type)
    if label.rank >= 7 and not args.force:
        _err(
            f"{label} has rank {label.rank}; surveys default to rank <= 6 "
            "(pass --force if you really want this; E7 has 4160 ideals, E8 25080, "
            "and line-closedness checks grow steeply with the root count)"
        )
        return 2
    report = run_survey(str(label), jobs=args.jobs, log_greedy=args.log_greedy)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if args.format == "csv":
        if args.out:
            with open(Path(args.out).with_suffix(".csv"), "w", newline="") as fh:
                _write_csv(report, fh)
        else:
            _write_csv(report, sys.stdout)
    elif not args.out:
        print(text)
    _print_summary(report)
    if args.log_greedy:
        print(f"greedy peeling stuck on {report['summary']['greedy_stuck']} ideals", file=sys.stderr)
    return 0 if report["equivalence_ok"] else 1


def _print_summary(report: dict) -> None:
    s = report["summary"]
    rows = [
        ("ideals", report["ideal_count"]),
        ("chain peelable", s["chain_peelable"]),
        ("supersolvable", s["supersolvable"]),
        ("line closed", s["line_closed"]),
        ("koszul", s["koszul"]),
        ("bad ideals", s["bad_ideals"]),
        ("equivalence_ok", report["equivalence_ok"]),
        ("seconds", report["timing_seconds"]),
    ]
    print(f"survey {report['type']}", file=sys.stderr)
    for name, value in rows:
        print(f"  {name:<16} {value}", file=sys.stderr)


# -- verify -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    suite_names = args.suite or sorted(SUITES)
    type_names = [t for t in (args.types or "A2,A3,B2,B3,C3,D4,G2").split(",") if t]
    failed = False
    for type_str in type_names:
        rs = _load_system(type_str)
        for name in suite_names:
            result = SUITES[name](rs)
            status = "PASS" if result.ok else "FAIL"
            print(f"{name} {result.type_label}: {status} (checked {result.checked})")
            for failure in result.failures:
                failed = True
                print(f"    counterexample: {failure}")
    return 1 if failed else 0


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootarr",
        description="Root ideal arrangements: exact classification of order ideals "
        "of root posets as chain-peelable / supersolvable / line-closed.",
    )
    parser.add_argument("--version", action="version", version=f"rootarr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("show", help="dump roots, heights and covers of a type")
    p.add_argument("--type", required=True, help="Cartan type, e.g. D4")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("classify", help="classify the downward closure of generator roots")
    p.add_argument("--type", required=True)
    p.add_argument(
        "--ideal",
        required=True,
        help="comma-separated generator roots in coordinate form, e.g. 1110,1101,0111",
    )
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("survey", help="classify every ideal of a type and report")
    p.add_argument("--type", required=True)
    p.add_argument("--jobs", type=int, default=1, help="parallel classification workers")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--force", action="store_true", help="allow rank >= 7 surveys")
    p.add_argument(
        "--log-greedy",
        action="store_true",
        help="count ideals where greedy peeling gets stuck though a peeling exists",
    )
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify", help="run exhaustive property suites")
    p.add_argument(
        "--suite",
        action="append",
        choices=sorted(SUITES),
        help="suite name (repeatable; default: all suites)",
    )
    p.add_argument("--types", help="comma-separated type labels (default: A2,A3,B2,B3,C3,D4,G2)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        _err(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
