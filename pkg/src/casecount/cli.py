"""Command-line entry point: ``casecount compare | sweep | validate``.

Exit status is 0 on success, 1 for data/validation errors and 2 for usage
errors.
"""

from __future__ import annotations

import argparse
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence

from . import ingest, oracle
from .metrics import compare, list_singletons
from .model import CaseCountError, CaseKind, Clustering, Side, SweepRow
from .report import DIRECTIONS, FORMATS, ReportOptions, render, render_sweep

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_ingest_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delimiter", default=",", help="field separator (default ',')")
    p.add_argument("--no-header", action="store_true", help="input files have no header row")
    p.add_argument("--missing-policy", choices=("strict", "intersect"), default="strict",
                   help="split inputs: reject (strict) or drop (intersect) unshared references")
    p.add_argument("--duplicate-policy", choices=("strict", "lenient"), default="strict",
                   help="reject or skip exact duplicate rows")


def _ingest_options(args, fmt: str) -> ingest.IngestOptions:
    try:
        return ingest.IngestOptions(format=fmt, delimiter=args.delimiter, has_header=not args.no_header,
                                    missing_policy=args.missing_policy, duplicate_policy=args.duplicate_policy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_pair(paths: Sequence[str], args):
    if len(paths) == 1:
        return ingest.load_merged(paths[0], _ingest_options(args, "merged"))
    if len(paths) == 2:
        return ingest.load_split(paths[0], paths[1], _ingest_options(args, "split"))
    raise UsageError("expected one merged file or two split files")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _case_filter(values: Optional[List[str]]):
    if not values:
        return None
    kinds = set()
    for value in values:
        for part in value.split(","):
            if part.strip().lower() == "all":
                return None
            try:
                kinds.add(CaseKind.parse(part))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    return frozenset(kinds)


def cmd_compare(args) -> int:
    baseline, counterpart = _load_pair(args.inputs, args)
    try:
        options = ReportOptions(format=args.format, case_filter=_case_filter(args.filter_case),
                                direction=args.direction, max_detail_rows=args.max_detail_rows,
                                twi_precision=args.twi_precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = compare(baseline, counterpart)
    _emit(render(result, options, detail=args.detail), args.out)
    return EXIT_OK


def _sweep_one(job):
    baseline, path, label, options = job
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            variant = ingest.load_single(path, Side.COUNTERPART, options)
            baseline_r, variant = ingest.reconcile(baseline, variant, options.missing_policy)
            row = SweepRow.from_result(label, compare(baseline_r, variant))
        return row, None, [str(w.message) for w in caught]
    except (CaseCountError, OSError) as exc:
        return None, f"{path}: {exc}", []


def cmd_sweep(args) -> int:
    options = _ingest_options(args, "split")
    baseline = ingest.load_single(args.baseline, Side.BASELINE, options)
    if args.labels:
        labels = [s.strip() for s in args.labels.split(",")]
        if len(labels) != len(args.variants):
            raise UsageError(f"--labels has {len(labels)} entries for {len(args.variants)} variants")
    else:
        labels = [Path(v).stem for v in args.variants]
    baseline_label = args.baseline_label if args.baseline_label is not None else Path(args.baseline).stem
    jobs = [(baseline, path, label, options) for path, label in zip(args.variants, labels)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = pool.map(_sweep_one, jobs)
            outcomes = list(outcomes)
    else:
        outcomes = map(_sweep_one, jobs)
    rows, failed = [], 0
    for row, error, notes in outcomes:
        for note in notes:
            print(f"warning: {note}", file=sys.stderr)
        if error is not None:
            failed += 1
            print(f"error: {error}", file=sys.stderr)
            if args.fail_fast:
                return EXIT_DATA
            continue
        rows.append(row)
    if rows:
        _emit(render_sweep(rows, baseline_label, args.format), args.out)
    return EXIT_DATA if failed else EXIT_OK


def _describe(c: Clustering) -> str:
    return f"{c.n_clusters} clusters ({len(list_singletons(c))} singletons)"


def cmd_validate(args) -> int:
    if args.single:
        if len(args.inputs) != 1:
            raise UsageError("--single takes exactly one file")
        c = ingest.load_single(args.inputs[0], Side.BASELINE, _ingest_options(args, "split"))
        print(f"{c.n_references} references, {_describe(c)}")
        return EXIT_OK
    baseline, counterpart = _load_pair(args.inputs, args)
    print(f"{baseline.n_references} references, ER1: {_describe(baseline)}, ER2: {_describe(counterpart)}")
    return EXIT_OK


def _parse_edits(spec: str):
    counts = {"merge": 0, "split": 0, "move": 0}
    for part in filter(None, (s.strip() for s in spec.split(","))):
        name, _, n = part.partition("=")
        if name not in counts or not n.isdigit():
            raise UsageError(f"bad edit spec {part!r}; use e.g. merge=2,split=1,move=1")
        counts[name] = int(n)
    return counts


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    base = oracle.random_clustering(rng, args.refs, args.clusters)
    script: List[oracle.Edit] = []
    for kind, n in _parse_edits(args.edits).items():
        taken = [c for e in script for c in oracle.touched_clusters(e, base)]
        script += oracle.random_edit_script(base, rng, kind, n_edits=n, exclude=taken)
    counterpart, expected = oracle.perturb(base, script)
    ingest.write_merged(args.out, base, counterpart)
    print(f"wrote {args.out}: {base.n_references} references; expected UC={expected.uc} MC={expected.mc} "
          f"PC={expected.pc} OC={expected.oc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="casecount",
                                     description="Compare two clusterings of the same references.")
    sub = parser.add_subparsers(dest="command", metavar="{compare,sweep,validate}")
    sub.required = True

    p = sub.add_parser("compare", help="classify every ER1 cluster against ER2 and report")
    p.add_argument("inputs", nargs="+", help="one merged file, or ER1 and ER2 files")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--filter-case", action="append", metavar="CASE",
                   help="only list clusters of these cases (repeatable or comma separated)")
    p.add_argument("--direction", choices=DIRECTIONS, default="both")
    p.add_argument("--detail", action="store_true", help="append the per-reference listing to text output")
    p.add_argument("--max-detail-rows", type=int, default=None)
    p.add_argument("--twi-precision", type=int, default=None)
    p.add_argument("--out", help="write to this file instead of standard output")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="compare one baseline against several variants")
    p.add_argument("baseline", help="baseline RecID,ClusterID file")
    p.add_argument("variants", nargs="+", help="variant RecID,ClusterID files")
    p.add_argument("--labels", help="comma separated row labels (default: file stems)")
    p.add_argument("--baseline-label", help="label of the row to flag (default: baseline file stem)")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="compare variants in parallel")
    p.add_argument("--fail-fast", action="store_true", help="stop at the first failing variant")
    p.add_argument("--out")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="check inputs and print their profile")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--single", action="store_true", help="input is one RecID,ClusterID file")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen")
    p.add_argument("--refs", type=int, default=100)
    p.add_argument("--clusters", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edits", default="merge=2,split=2,move=1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            status = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return status
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"casecount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CaseCountError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
