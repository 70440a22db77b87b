"""Profile counts, singleton detection, the TWI metric, and full comparisons."""

from __future__ import annotations

import math
from typing import Tuple

from .classify import build_overlap_index, check_same_references, classify_index
from .model import ComparisonResult, Clustering, DomainError, Profile, Side


def list_singletons(clustering: Clustering) -> Tuple[str, ...]:
    """Ids of the clusters holding exactly one reference, in ascending order."""
    return tuple(c for c, refs in clustering.members.items() if len(refs) == 1)


def compute_profile(baseline: Clustering, counterpart: Clustering, *, checked: bool = False) -> Profile:
    if not checked:
        check_same_references(baseline, counterpart)
    return Profile(
        rc=baseline.n_references,
        cc1=baseline.n_clusters,
        sc1=len(list_singletons(baseline)),
        cc2=counterpart.n_clusters,
        sc2=len(list_singletons(counterpart)),
    )


def compute_twi(cc1: int, cc2: int, v: int) -> float:
    """Talburt-Wang index ``sqrt(cc1 * cc2) / v``.

    ``v`` is the number of non-empty intersections between the two
    clusterings. The value lies in (0, 1] and is exactly 1.0 only when the
    clusterings are identical.

    >>> round(compute_twi(7, 8, 11), 4)
    0.6803
    """
    if cc1 < 1 or cc2 < 1:
        raise DomainError(f"cluster counts must be >= 1, got cc1={cc1}, cc2={cc2}")
    if v < max(cc1, cc2):
        raise DomainError(f"intersection count {v} is below max(cc1, cc2) = {max(cc1, cc2)}; "
                          "the overlap index is corrupt")
    return math.sqrt(cc1 * cc2) / v


def compare(baseline: Clustering, counterpart: Clustering) -> ComparisonResult:
    """Run the comparison in both directions and collect every count."""
    if baseline.side is not Side.BASELINE:
        baseline = baseline.with_side(Side.BASELINE)
    if counterpart.side is not Side.COUNTERPART:
        counterpart = counterpart.with_side(Side.COUNTERPART)
    index = build_overlap_index(baseline, counterpart)
    profile = compute_profile(baseline, counterpart, checked=True)
    fwd, fwd_counts = classify_index(index, baseline, counterpart)
    rev, rev_counts = classify_index(index.transpose(counterpart), counterpart, baseline)
    return ComparisonResult(
        baseline=baseline,
        counterpart=counterpart,
        profile=profile,
        forward=fwd_counts,
        reverse=rev_counts,
        forward_classifications=tuple(fwd),
        reverse_classifications=tuple(rev),
        v=index.v,
        twi=compute_twi(profile.cc1, profile.cc2, index.v),
        singletons_1=list_singletons(baseline),
        singletons_2=list_singletons(counterpart),
    )
