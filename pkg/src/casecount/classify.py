"""Overlap index and per-cluster case classification.

The index is built in one pass over the references, grouping each reference
under its (baseline cluster, counterpart cluster) pair. Because both sides
are partitions, every case test reduces to size arithmetic on that index:

* one intersecting counterpart of the same size: unchanged
* one intersecting counterpart that is larger: merged
* several counterparts whose sizes sum to the cluster size: partitioned
* several counterparts, some reaching outside the cluster: overlapping
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import List, Mapping, Tuple

from .model import (
    CaseClassification,
    CaseCounts,
    CaseKind,
    Clustering,
    ReferenceSetMismatch,
)


def check_same_references(baseline: Clustering, counterpart: Clustering, limit: int = 10) -> None:
    a, b = baseline.assignment, counterpart.assignment
    if a.keys() == b.keys():
        return
    only_a = sorted(a.keys() - b.keys())
    only_b = sorted(b.keys() - a.keys())
    raise ReferenceSetMismatch(mismatch_message(only_a, only_b, limit), only_a, only_b)


def mismatch_message(only_a, only_b, limit: int = 10) -> str:
    def show(refs):
        head = ", ".join(repr(r) for r in refs[:limit])
        more = f", ... ({len(refs) - limit} more)" if len(refs) > limit else ""
        return f"{len(refs)} [{head}{more}]"

    return ("ReferenceSetMismatch: reference sets differ; "
            f"only in ER1: {show(only_a)}; only in ER2: {show(only_b)}")


@dataclass(frozen=True)
class OverlapIndex:
    """Non-empty intersections between a baseline and a counterpart clustering.

    ``overlaps[a][b]`` is the sorted tuple of references shared by baseline
    cluster ``a`` and counterpart cluster ``b``. Only non-empty intersections
    are stored, so ``v`` is the number of stored pairs.
    """

    overlaps: Mapping[str, Mapping[str, Tuple[str, ...]]]
    v: int

    def row(self, cluster: str) -> Mapping[str, Tuple[str, ...]]:
        return self.overlaps[cluster]

    def transpose(self, counterpart: Clustering) -> "OverlapIndex":
        """The same intersections keyed counterpart-first.

        Rows come out ordered by ``counterpart`` cluster id and, within a row,
        by baseline cluster id, because this index is walked in that order.
        """
        flipped: dict = {b: {} for b in counterpart.members}
        for a, row in self.overlaps.items():
            for b, refs in row.items():
                flipped[b][a] = refs
        return OverlapIndex(MappingProxyType({b: MappingProxyType(r) for b, r in flipped.items()}), self.v)


def build_overlap_index(baseline: Clustering, counterpart: Clustering) -> OverlapIndex:
    check_same_references(baseline, counterpart)
    lookup = counterpart.assignment.__getitem__
    grouped: dict = {}
    v = 0
    # members are already sorted, so appended intersections stay sorted
    for a, refs in baseline.members.items():
        targets = list(map(lookup, refs))
        first = targets[0]
        if targets.count(first) == len(targets):
            grouped[a] = MappingProxyType({first: refs})
            v += 1
            continue
        row: dict = {}
        for r, b in zip(refs, targets):
            bucket = row.get(b)
            if bucket is None:
                row[b] = [r]
            else:
                bucket.append(r)
        v += len(row)
        grouped[a] = MappingProxyType({b: tuple(row[b]) for b in sorted(row)})
    return OverlapIndex(MappingProxyType(grouped), v)


def classify_cluster(size: int, row: Mapping[str, Tuple[str, ...]], counterpart: Clustering) -> CaseKind:
    """Decide the case of a cluster of ``size`` references from its overlap row."""
    if not row:
        raise ValueError("overlap row is empty; the cluster has no references on the other side")
    n = len(row)
    if n == 1:
        (b,) = row
        other_size = counterpart.size(b)
        if other_size == size:
            return CaseKind.UNCHANGED
        if other_size > size:
            return CaseKind.MERGED
        raise ReferenceSetMismatch(
            f"cluster of size {size} maps to a smaller counterpart {b!r}; inputs are not partitions "
            "of the same reference set")
    covered = sum(counterpart.size(b) for b in row)
    return CaseKind.PARTITIONED if covered == size else CaseKind.OVERLAPPING


def classify_index(index: OverlapIndex, clustering: Clustering, other: Clustering) -> Tuple[List[CaseClassification], CaseCounts]:
    """Classify every cluster of ``clustering`` using ``index`` rows keyed by it.

    Same decision as :func:`classify_cluster`, inlined with a precomputed
    size table for speed.
    """
    sizes = {b: len(m) for b, m in other.members.items()}
    unchanged, merged = CaseKind.UNCHANGED, CaseKind.MERGED
    partitioned, overlapping = CaseKind.PARTITIONED, CaseKind.OVERLAPPING
    uc = mc = pc = oc = 0
    out = []
    side = clustering.side
    overlaps = index.overlaps
    for cluster, refs in clustering.members.items():
        row = overlaps[cluster]
        size = len(refs)
        keys = tuple(row)
        if len(keys) == 1:
            other_size = sizes[keys[0]]
            if other_size == size:
                kind = unchanged
                uc += 1
            elif other_size > size:
                kind = merged
                mc += 1
            else:
                raise ReferenceSetMismatch(f"cluster {cluster!r} maps into a smaller cluster {keys[0]!r}")
        elif sum(map(sizes.__getitem__, keys)) == size:
            kind = partitioned
            pc += 1
        else:
            kind = overlapping
            oc += 1
        out.append(CaseClassification(cluster, kind, size, keys, row, side))
    return out, CaseCounts(uc, mc, pc, oc)


def classify_all(baseline: Clustering, counterpart: Clustering) -> Tuple[List[CaseClassification], CaseCounts]:
    """Classify every baseline cluster, ordered by baseline cluster id."""
    index = build_overlap_index(baseline, counterpart)
    return classify_index(index, baseline, counterpart)
