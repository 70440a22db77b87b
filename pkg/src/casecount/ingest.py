"""Read clusterings from CSV files.

Two layouts are accepted. *Merged*: one file with RecID, ER1 ClusterID,
ER2 ClusterID columns. *Split*: two files of RecID, ClusterID. The dialect
is standard CSV (double-quote quoting, doubled quotes escape, LF or CRLF).
Surrounding whitespace is stripped from every value.

Non-fatal findings (extra columns, lenient duplicates, dropped references)
are emitted as :class:`IngestWarning`.
"""

from __future__ import annotations

import csv
import os
import warnings
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from .classify import mismatch_message
from .model import (
    CaseCountError,
    Clustering,
    DuplicateReference,
    DuplicateRow,
    EmptyInput,
    ReferenceSetMismatch,
    Side,
)

MERGED_COLUMNS = ("RecID", "ER1 ClusterID", "ER2 ClusterID")
SPLIT_COLUMNS = ("RecID", "ClusterID")


class ParseError(CaseCountError, ValueError):
    def __init__(self, path, row: int, column: str, reason: str):
        self.path = os.fspath(path)
        self.row = row
        self.column = column
        self.reason = reason
        where = f"{self.path}, row {row}" + (f", column {column!r}" if column else "")
        super().__init__(f"ParseError: {where}: {reason}")


class IngestWarning(UserWarning):
    pass


class DroppedReferences(IngestWarning):
    """References discarded because only one input contained them."""

    def __init__(self, message: str, references: Sequence[str], side: Side):
        super().__init__(message)
        self.references = tuple(references)
        self.side = side


@dataclass(frozen=True)
class IngestOptions:
    format: str = "merged"
    delimiter: str = ","
    has_header: bool = True
    missing_policy: str = "strict"
    duplicate_policy: str = "strict"

    def __post_init__(self):
        if self.format not in ("merged", "split"):
            raise ValueError(f"format must be 'merged' or 'split', got {self.format!r}")
        if len(self.delimiter) != 1:
            raise ValueError(f"delimiter must be a single character, got {self.delimiter!r}")
        if self.delimiter in ('"', "'", "\n", "\r"):
            raise ValueError(f"delimiter {self.delimiter!r} is not allowed")
        if self.missing_policy not in ("strict", "intersect"):
            raise ValueError(f"missing_policy must be 'strict' or 'intersect', got {self.missing_policy!r}")
        if self.duplicate_policy not in ("strict", "lenient"):
            raise ValueError(f"duplicate_policy must be 'strict' or 'lenient', got {self.duplicate_policy!r}")


def _records(path, options: IngestOptions, columns: Sequence[str]) -> Iterator[Tuple[int, List[str]]]:
    """Yield ``(row_number, values)`` for each data row, validated and stripped."""
    need = len(columns)
    names = list(columns)
    warned_extra = False
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh, delimiter=options.delimiter, quotechar='"', doublequote=True, strict=True)
        header_pending = options.has_header
        try:
            for row in reader:
                lineno = reader.line_num
                if not row or all(not v.strip() for v in row) and len(row) <= 1:
                    continue
                if header_pending:
                    header_pending = False
                    if len(row) < need:
                        raise ParseError(path, lineno, "", f"header has {len(row)} columns, expected at least {need}")
                    names = [h.strip() or columns[i] for i, h in enumerate(row[:need])]
                    if len(row) > need:
                        warned_extra = True
                        warnings.warn(f"{os.fspath(path)}: ignoring {len(row) - need} extra column(s)",
                                      IngestWarning, stacklevel=3)
                    continue
                if len(row) < need:
                    raise ParseError(path, lineno, names[len(row)] if len(row) < len(names) else "",
                                     f"expected {need} fields, found {len(row)}")
                if len(row) > need and not warned_extra:
                    warned_extra = True
                    warnings.warn(f"{os.fspath(path)}: ignoring {len(row) - need} extra column(s)",
                                  IngestWarning, stacklevel=3)
                values = [v.strip() for v in row[:need]]
                for name, value in zip(names, values):
                    if not value:
                        raise ParseError(path, lineno, name, "blank field")
                yield lineno, values
        except csv.Error as exc:
            raise ParseError(path, reader.line_num, "", str(exc)) from None


def _assign(path, rows, side: Side, options: IngestOptions) -> Dict[str, str]:
    """Fold ``(row, reference, cluster)`` triples into an assignment mapping."""
    assignment: Dict[str, str] = {}
    first_row: Dict[str, int] = {}
    n_dupes = 0
    for lineno, ref, cluster in rows:
        seen = assignment.get(ref)
        if seen is None:
            assignment[ref] = cluster
            first_row[ref] = lineno
            continue
        if seen != cluster:
            raise DuplicateReference(
                f"DuplicateReference: {os.fspath(path)}: RecID {ref!r} is in {side.label} cluster "
                f"{seen!r} at row {first_row[ref]} and cluster {cluster!r} at row {lineno}",
                reference=ref, clusters=(seen, cluster))
        if options.duplicate_policy == "strict":
            raise DuplicateRow(
                f"DuplicateRow: {os.fspath(path)}: RecID {ref!r} with {side.label} cluster {cluster!r} "
                f"repeated at rows {first_row[ref]} and {lineno}",
                reference=ref, cluster=cluster)
        n_dupes += 1
    if n_dupes:
        warnings.warn(f"{os.fspath(path)}: skipped {n_dupes} duplicate {side.label} row(s)",
                      IngestWarning, stacklevel=3)
    return assignment


def load_merged(path, options: IngestOptions = IngestOptions()) -> Tuple[Clustering, Clustering]:
    """Load both clusterings from one three-column file."""
    rows = list(_records(path, options, MERGED_COLUMNS))
    if not rows:
        raise EmptyInput(f"EmptyInput: {os.fspath(path)} has no data rows")
    first = _assign(path, ((n, v[0], v[1]) for n, v in rows), Side.BASELINE, options)
    second = _assign(path, ((n, v[0], v[2]) for n, v in rows), Side.COUNTERPART, options)
    return Clustering(Side.BASELINE, first), Clustering(Side.COUNTERPART, second)


def load_single(path, side: Side = Side.BASELINE, options: IngestOptions = IngestOptions()) -> Clustering:
    """Load one clustering from a two-column RecID, ClusterID file."""
    rows = list(_records(path, options, SPLIT_COLUMNS))
    if not rows:
        raise EmptyInput(f"EmptyInput: {os.fspath(path)} has no data rows")
    side = Side(side)
    return Clustering(side, _assign(path, ((n, v[0], v[1]) for n, v in rows), side, options))


def reconcile(baseline: Clustering, counterpart: Clustering, missing_policy: str = "strict") -> Tuple[Clustering, Clustering]:
    """Make two clusterings cover the same references, or fail in strict mode."""
    a, b = baseline.assignment, counterpart.assignment
    only_a = sorted(r for r in a if r not in b)
    only_b = sorted(r for r in b if r not in a)
    if not only_a and not only_b:
        return baseline, counterpart
    if missing_policy == "strict":
        raise ReferenceSetMismatch(mismatch_message(only_a, only_b), only_a, only_b)
    for side, dropped in ((Side.BASELINE, only_a), (Side.COUNTERPART, only_b)):
        for ref in dropped:
            warnings.warn(DroppedReferences(
                f"dropped RecID {ref!r}: present only in the {side.label} input", [ref], side),
                stacklevel=3)
    keep_a = {r: c for r, c in a.items() if r in b}
    if not keep_a:
        raise EmptyInput("EmptyInput: the two inputs share no references")
    keep_b = {r: b[r] for r in keep_a}
    return Clustering(Side.BASELINE, keep_a), Clustering(Side.COUNTERPART, keep_b)


def load_split(path1, path2, options: IngestOptions = IngestOptions(format="split")) -> Tuple[Clustering, Clustering]:
    """Load the baseline from ``path1`` and the counterpart from ``path2``.

    Under ``missing_policy="strict"`` differing reference sets raise
    :class:`ReferenceSetMismatch`. Under ``"intersect"`` references missing
    from either file are dropped, one :class:`DroppedReferences` warning each.
    """
    baseline = load_single(path1, Side.BASELINE, options)
    counterpart = load_single(path2, Side.COUNTERPART, options)
    return reconcile(baseline, counterpart, options.missing_policy)


def _quote(value: str, delimiter: str) -> str:
    if any(ch in value for ch in (delimiter, '"', "\n", "\r")) or value != value.strip():
        return '"' + value.replace('"', '""') + '"'
    return value


def write_merged(path, baseline: Clustering, counterpart: Clustering, delimiter: str = ",") -> None:
    """Write both clusterings as a merged file, rows ordered by ER1 cluster then RecID."""
    other = counterpart.assignment
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(delimiter.join(MERGED_COLUMNS) + "\n")
        for cluster, refs in baseline.members.items():
            for r in refs:
                fh.write(delimiter.join(_quote(x, delimiter) for x in (r, cluster, other[r])) + "\n")


def write_single(path, clustering: Clustering, delimiter: str = ",") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(delimiter.join(SPLIT_COLUMNS) + "\n")
        for cluster, refs in clustering.members.items():
            for r in refs:
                fh.write(delimiter.join(_quote(x, delimiter) for x in (r, cluster)) + "\n")
