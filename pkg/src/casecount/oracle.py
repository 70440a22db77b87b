"""Independent checks for the classifier.

:func:`brute_force_classify` applies the set conditions of the four cases
literally, with explicit subset and union tests over every counterpart
cluster. It shares no code with :mod:`casecount.classify`.

:func:`perturb` edits a baseline clustering with merges, splits and moves
and reports the case counts those edits must produce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .model import CaseCountError, CaseCounts, Clustering, Side


class ConflictingEdits(CaseCountError, ValueError):
    pass


def brute_force_classify(baseline: Clustering, counterpart: Clustering) -> CaseCounts:
    others = [frozenset(m) for m in counterpart.members.values()]
    uc = mc = pc = oc = 0
    for members in baseline.members.values():
        a = frozenset(members)
        touching = [b for b in others if a & b]
        union = frozenset().union(*touching)
        if any(a == b for b in others):
            uc += 1
        elif any(a < b for b in others):
            mc += 1
        elif len(touching) > 1 and a == union:
            pc += 1
        elif len(touching) > 1 and a < union:
            oc += 1
        else:
            raise AssertionError(f"cluster {sorted(a)} fits no case; inputs are not matching partitions")
    return CaseCounts(uc, mc, pc, oc)


def brute_force_v(baseline: Clustering, counterpart: Clustering) -> int:
    """Count non-empty intersections by testing every pair of clusters."""
    others = [frozenset(m) for m in counterpart.members.values()]
    return sum(1 for m in baseline.members.values() for b in others if frozenset(m) & b)


@dataclass(frozen=True)
class Merge:
    clusters: Tuple[str, ...]


@dataclass(frozen=True)
class Split:
    cluster: str
    parts: Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class Move:
    reference: str
    target: str


Edit = Union[Merge, Split, Move]


def touched_clusters(edit: Edit, baseline: Clustering) -> Tuple[str, ...]:
    if isinstance(edit, Merge):
        return tuple(edit.clusters)
    if isinstance(edit, Split):
        return (edit.cluster,)
    if isinstance(edit, Move):
        if edit.reference not in baseline.assignment:
            raise ConflictingEdits(f"move of unknown reference {edit.reference!r}")
        return (baseline.cluster_of(edit.reference), edit.target)
    raise TypeError(f"not an edit: {edit!r}")


def perturb(baseline: Clustering, edit_script: Sequence[Edit]) -> Tuple[Clustering, CaseCounts]:
    """Apply ``edit_script`` to ``baseline`` and return the edited clustering.

    Edits must touch pairwise disjoint sets of baseline clusters, otherwise
    :class:`ConflictingEdits` is raised. Expected counts per edit:

    * ``Merge`` of k clusters: k merged
    * ``Split`` into k >= 2 parts: 1 partitioned
    * ``Move`` of reference r from A into T: T is merged; A is overlapping,
      or merged when r was its only member
    * untouched clusters: unchanged
    """
    members = baseline.members
    owner: Dict[str, int] = {}
    for i, edit in enumerate(edit_script):
        touched = touched_clusters(edit, baseline)
        if len(set(touched)) != len(touched):
            raise ConflictingEdits(f"edit {i} touches a cluster twice: {edit!r}")
        for c in touched:
            if c not in members:
                raise ConflictingEdits(f"edit {i} names unknown cluster {c!r}")
            if c in owner:
                raise ConflictingEdits(f"edits {owner[c]} and {i} both touch cluster {c!r}")
            owner[c] = i

    out: Dict[str, str] = {}
    uc = mc = pc = oc = 0
    for c, refs in members.items():
        if c not in owner:
            for r in refs:
                out[r] = f"u:{c}"
            uc += 1
    for i, edit in enumerate(edit_script):
        if isinstance(edit, Merge):
            if len(edit.clusters) < 2:
                raise ConflictingEdits(f"edit {i}: a merge needs at least two clusters")
            for c in edit.clusters:
                for r in members[c]:
                    out[r] = f"m:{i}"
            mc += len(edit.clusters)
        elif isinstance(edit, Split):
            cover = [r for part in edit.parts for r in part]
            if len(edit.parts) < 2 or any(not p for p in edit.parts):
                raise ConflictingEdits(f"edit {i}: a split needs at least two non-empty parts")
            if sorted(cover) != list(members[edit.cluster]):
                raise ConflictingEdits(f"edit {i}: split parts must partition cluster {edit.cluster!r}")
            for k, part in enumerate(edit.parts):
                for r in part:
                    out[r] = f"s:{i}:{k}"
            pc += 1
        else:
            source = baseline.cluster_of(edit.reference)
            for r in members[source]:
                out[r] = f"v:{i}:src"
            for r in members[edit.target]:
                out[r] = f"v:{i}:dst"
            out[edit.reference] = f"v:{i}:dst"
            mc += 1
            if len(members[source]) == 1:
                mc += 1
            else:
                oc += 1
    return Clustering(Side.COUNTERPART, out), CaseCounts(uc, mc, pc, oc)


def random_clustering(rng: random.Random, n_refs: int, max_clusters: int,
                      side: Side = Side.BASELINE, prefix: str = "c") -> Clustering:
    """Assign ``n_refs`` references uniformly to up to ``max_clusters`` clusters."""
    refs = [f"r{i:03d}" for i in range(n_refs)]
    return Clustering(side, {r: f"{prefix}{rng.randrange(max_clusters)}" for r in refs})


def random_pair(rng: random.Random, max_refs: int = 50, max_clusters: int = 10) -> Tuple[Clustering, Clustering]:
    """Two independent random partitions of the same 1..max_refs references."""
    n = rng.randint(1, max_refs)
    k1 = rng.randint(1, max_clusters)
    k2 = rng.randint(1, max_clusters)
    base = random_clustering(rng, n, k1, Side.BASELINE, "a")
    if rng.random() < 0.3:
        # derive from the baseline so equal and nested clusters are common
        counterpart, _ = perturb(base, random_edit_script(base, rng, "mixed"))
    else:
        counterpart = random_clustering(rng, n, k2, Side.COUNTERPART, "b")
    return base, counterpart


def random_edit_script(baseline: Clustering, rng: random.Random, kind: str = "mixed",
                       max_edits: int = 4, n_edits: Optional[int] = None,
                       exclude: Iterable[str] = ()) -> List[Edit]:
    """Draw a script of disjoint edits. ``kind`` is merge, split, move or mixed.

    ``n_edits`` fixes the number of attempts (default: random up to
    ``max_edits``); attempts that find no eligible clusters are skipped.
    Clusters in ``exclude`` are never touched.
    """
    skip = set(exclude)
    free = [c for c in baseline.members if c not in skip]
    rng.shuffle(free)
    script: List[Edit] = []
    attempts = rng.randint(0, max_edits) if n_edits is None else n_edits
    for _ in range(attempts):
        op = rng.choice(("merge", "split", "move")) if kind == "mixed" else kind
        if op == "merge" and len(free) >= 2:
            k = rng.randint(2, min(3, len(free)))
            script.append(Merge(tuple(free.pop() for _ in range(k))))
        elif op == "split":
            big = [c for c in free if baseline.size(c) >= 2]
            if not big:
                continue
            c = rng.choice(big)
            free.remove(c)
            refs = list(baseline.members[c])
            rng.shuffle(refs)
            k = rng.randint(2, len(refs))
            cuts = sorted(rng.sample(range(1, len(refs)), k - 1))
            bounds = [0] + cuts + [len(refs)]
            parts = tuple(tuple(sorted(refs[bounds[j]:bounds[j + 1]])) for j in range(k))
            script.append(Split(c, parts))
        elif op == "move" and len(free) >= 2:
            src, dst = free.pop(), free.pop()
            script.append(Move(rng.choice(baseline.members[src]), dst))
    return script
