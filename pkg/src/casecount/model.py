"""Domain types shared by every stage of a clustering comparison.

Identifiers are opaque, case-sensitive strings. A cluster identifier only
has meaning inside the :class:`Clustering` it came from; the two sides of a
comparison are separate namespaces and are never matched by id.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Tuple


class CaseCountError(Exception):
    """Base class for every error raised by this package."""


class InvalidIdentifier(CaseCountError, ValueError):
    pass


class EmptyInput(CaseCountError, ValueError):
    pass


class DuplicateReference(CaseCountError, ValueError):
    """A reference was assigned to two different clusters on one side."""

    def __init__(self, message: str, reference: str = "", clusters: Tuple[str, ...] = ()):
        super().__init__(message)
        self.reference = reference
        self.clusters = clusters


class DuplicateRow(CaseCountError, ValueError):
    """The same (reference, cluster) pair was given more than once."""

    def __init__(self, message: str, reference: str = "", cluster: str = ""):
        super().__init__(message)
        self.reference = reference
        self.cluster = cluster


class ReferenceSetMismatch(CaseCountError, ValueError):
    """The two clusterings do not cover the same references."""

    def __init__(self, message: str, only_baseline: Sequence[str] = (), only_counterpart: Sequence[str] = ()):
        super().__init__(message)
        self.only_baseline = tuple(only_baseline)
        self.only_counterpart = tuple(only_counterpart)


class DomainError(CaseCountError, ValueError):
    pass


class Side(str, enum.Enum):
    BASELINE = "baseline"
    COUNTERPART = "counterpart"

    @property
    def other(self) -> "Side":
        return Side.COUNTERPART if self is Side.BASELINE else Side.BASELINE

    @property
    def label(self) -> str:
        """Short report label: ER1 for the baseline, ER2 for the counterpart."""
        return "ER1" if self is Side.BASELINE else "ER2"


class CaseKind(str, enum.Enum):
    """The four mutually exclusive fates of a cluster under a second clustering."""

    UNCHANGED = "Unchanged"
    MERGED = "Merged"
    PARTITIONED = "Partitioned"
    OVERLAPPING = "Overlapping"

    def case_number(self, reverse: bool = False) -> int:
        """Report numbering: 1-4 baseline-to-counterpart, 5-8 the other way."""
        return _CASE_ORDER.index(self) + (5 if reverse else 1)

    @classmethod
    def parse(cls, text: str) -> "CaseKind":
        key = text.strip().lower()
        for kind in cls:
            if kind.value.lower() == key or kind.name.lower() == key:
                return kind
        raise ValueError(f"unknown case kind {text!r}; expected one of {[k.value for k in cls]}")


_CASE_ORDER = (CaseKind.UNCHANGED, CaseKind.MERGED, CaseKind.PARTITIONED, CaseKind.OVERLAPPING)
CASE_KINDS: Tuple[CaseKind, ...] = _CASE_ORDER


def check_id(value: str, what: str = "identifier") -> str:
    if not isinstance(value, str):
        raise InvalidIdentifier(f"{what} must be a string, got {type(value).__name__}")
    if not value.strip():
        raise InvalidIdentifier(f"{what} must be non-empty")
    return value


class Clustering:
    """A partition of a reference set into non-empty, disjoint clusters.

    ``assignment`` maps each reference to its cluster and ``members`` maps each
    cluster to its references. Both are read-only views; clusters are ordered
    by id and members by reference id, so iteration order is deterministic.
    """

    __slots__ = ("_side", "_assignment", "_members")

    def __init__(self, side: Side, assignment: Mapping[str, str]):
        if not assignment:
            raise EmptyInput(f"{Side(side).value} clustering has no references")
        side = Side(side)
        grouped: dict = {}
        for ref, cluster in assignment.items():
            bucket = grouped.get(cluster)
            if bucket is None:
                grouped[cluster] = [ref]
            else:
                bucket.append(ref)
        self._side = side
        self._assignment = MappingProxyType(dict(assignment))
        self._members = MappingProxyType({c: tuple(sorted(grouped[c])) for c in sorted(grouped)})

    @property
    def side(self) -> Side:
        return self._side

    @property
    def assignment(self) -> Mapping[str, str]:
        return self._assignment

    @property
    def members(self) -> Mapping[str, Tuple[str, ...]]:
        return self._members

    @property
    def n_references(self) -> int:
        return len(self._assignment)

    @property
    def n_clusters(self) -> int:
        return len(self._members)

    def references(self) -> frozenset:
        return frozenset(self._assignment)

    def cluster_of(self, reference: str) -> str:
        return self._assignment[reference]

    def size(self, cluster: str) -> int:
        return len(self._members[cluster])

    def member_sets(self) -> frozenset:
        """The partition as a set of frozensets, ignoring cluster ids."""
        return frozenset(frozenset(m) for m in self._members.values())

    def with_side(self, side: Side) -> "Clustering":
        return Clustering(side, self._assignment)

    def __len__(self) -> int:
        return self.n_clusters

    def __reduce__(self):
        return (Clustering, (self._side, dict(self._assignment)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return self._side == other._side and dict(self._assignment) == dict(other._assignment)

    def __hash__(self):
        return hash((self._side, frozenset(self._assignment.items())))

    def __repr__(self) -> str:
        return (f"Clustering(side={self._side.value}, references={self.n_references}, "
                f"clusters={self.n_clusters})")


def build_clustering(side: Side, pairs: Iterable[Tuple[str, str]], *,
                     allow_duplicate_rows: bool = False) -> Clustering:
    """Build a :class:`Clustering` from ``(reference, cluster)`` pairs.

    Raises :class:`DuplicateReference` when a reference is given two
    clusters, and :class:`DuplicateRow` for a repeated identical pair unless
    ``allow_duplicate_rows`` is set.
    """
    side = Side(side)
    assignment: dict = {}
    for ref, cluster in pairs:
        check_id(ref, "reference id")
        check_id(cluster, "cluster id")
        seen = assignment.get(ref)
        if seen is None:
            assignment[ref] = cluster
        elif seen != cluster:
            raise DuplicateReference(
                f"reference {ref!r} assigned to both cluster {seen!r} and {cluster!r} "
                f"in the {side.value} clustering",
                reference=ref, clusters=(seen, cluster))
        elif not allow_duplicate_rows:
            raise DuplicateRow(
                f"duplicate row ({ref!r}, {cluster!r}) in the {side.value} clustering",
                reference=ref, cluster=cluster)
    if not assignment:
        raise EmptyInput(f"no (reference, cluster) pairs for the {side.value} clustering")
    return Clustering(side, assignment)


def clustering_from_groups(side: Side, groups: Mapping[str, Iterable[str]]) -> Clustering:
    """Build a clustering from ``{cluster_id: members}``."""
    return build_clustering(side, ((ref, cid) for cid, refs in groups.items() for ref in refs))


@dataclass(frozen=True)
class Profile:
    rc: int
    cc1: int
    sc1: int
    cc2: int
    sc2: int

    def __post_init__(self):
        if self.rc < 1:
            raise DomainError(f"reference count must be >= 1, got {self.rc}")
        if not (0 <= self.sc1 <= self.cc1 <= self.rc):
            raise DomainError(f"need 0 <= SC1 <= CC1 <= RC, got {self.sc1}, {self.cc1}, {self.rc}")
        if not (0 <= self.sc2 <= self.cc2 <= self.rc):
            raise DomainError(f"need 0 <= SC2 <= CC2 <= RC, got {self.sc2}, {self.cc2}, {self.rc}")


@dataclass(frozen=True)
class CaseCounts:
    uc: int = 0
    mc: int = 0
    pc: int = 0
    oc: int = 0

    @property
    def total(self) -> int:
        return self.uc + self.mc + self.pc + self.oc

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.uc, self.mc, self.pc, self.oc)

    def __getitem__(self, kind: CaseKind) -> int:
        return self.as_tuple()[CASE_KINDS.index(CaseKind(kind))]

    @classmethod
    def from_kinds(cls, kinds: Iterable[CaseKind]) -> "CaseCounts":
        tally = [0, 0, 0, 0]
        for kind in kinds:
            tally[CASE_KINDS.index(kind)] += 1
        return cls(*tally)


class CaseClassification(NamedTuple):
    """Verdict for one cluster plus the evidence behind it.

    ``cluster`` belongs to the clustering on ``side``; ``counterpart_clusters``
    and the keys of ``intersections`` belong to the other side.
    """

    cluster: str
    kind: CaseKind
    size: int
    counterpart_clusters: Tuple[str, ...]
    intersections: Mapping[str, Tuple[str, ...]]
    side: Side = Side.BASELINE

    @property
    def baseline_cluster(self) -> str:
        return self.cluster

    @property
    def case_number(self) -> int:
        return self.kind.case_number(reverse=self.side is Side.COUNTERPART)


@dataclass(frozen=True)
class ComparisonResult:
    baseline: Clustering
    counterpart: Clustering
    profile: Profile
    forward: CaseCounts
    reverse: CaseCounts
    forward_classifications: Tuple[CaseClassification, ...]
    reverse_classifications: Tuple[CaseClassification, ...]
    v: int
    twi: float
    singletons_1: Tuple[str, ...]
    singletons_2: Tuple[str, ...]
    _forward_index: Optional[Mapping[str, CaseKind]] = field(default=None, repr=False, compare=False)
    _reverse_index: Optional[Mapping[str, CaseKind]] = field(default=None, repr=False, compare=False)

    def forward_kind(self, baseline_cluster: str) -> CaseKind:
        return self._kinds(forward=True)[baseline_cluster]

    def reverse_kind(self, counterpart_cluster: str) -> CaseKind:
        return self._kinds(forward=False)[counterpart_cluster]

    def _kinds(self, forward: bool) -> Mapping[str, CaseKind]:
        name = "_forward_index" if forward else "_reverse_index"
        index = getattr(self, name)
        if index is None:
            source = self.forward_classifications if forward else self.reverse_classifications
            index = {c.cluster: c.kind for c in source}
            object.__setattr__(self, name, index)
        return index


@dataclass(frozen=True)
class SweepRow:
    """One baseline-versus-variant comparison, as a row of a sweep table."""

    label: str
    cc1: int
    sc1: int
    uc: int
    mc: int
    pc: int
    oc: int
    cc2: int
    sc2: int

    COLUMNS = ("CC1", "SC1", "UC", "MC", "PC", "OC", "CC2", "SC2")

    def __post_init__(self):
        if self.uc + self.mc + self.pc + self.oc != self.cc1:
            raise DomainError(f"sweep row {self.label!r}: UC+MC+PC+OC != CC1")

    @classmethod
    def from_result(cls, label: str, result: ComparisonResult) -> "SweepRow":
        p, f = result.profile, result.forward
        return cls(label, p.cc1, p.sc1, f.uc, f.mc, f.pc, f.oc, p.cc2, p.sc2)

    def values(self) -> Tuple[int, ...]:
        return (self.cc1, self.sc1, self.uc, self.mc, self.pc, self.oc, self.cc2, self.sc2)
