"""Small built-in fixtures.

``TABLE1`` is the 16-reference worked example: ER1 forms 7 clusters, ER2
forms 8, and every one of the four cases occurs.
"""

from __future__ import annotations

from typing import Tuple

from .model import Clustering, Side

# (RecID, ER1 cluster, ER2 cluster), ordered by ER1 cluster
TABLE1 = (
    ("1", "a", "x"),
    ("2", "b", "y"),
    ("3", "b", "y"),
    ("4", "c", "z"),
    ("5", "c", "z"),
    ("6", "c", "z"),
    ("7", "d", "z"),
    ("8", "e", "w"),
    ("9", "e", "w"),
    ("10", "e", "t"),
    ("11", "f", "u"),
    ("12", "f", "u"),
    ("13", "f", "v"),
    ("14", "g", "u"),
    ("15", "g", "v"),
    ("16", "g", "s"),
)


def table1() -> Tuple[Clustering, Clustering]:
    """The worked example as ``(baseline, counterpart)``."""
    return (Clustering(Side.BASELINE, {r: a for r, a, _ in TABLE1}),
            Clustering(Side.COUNTERPART, {r: b for r, _, b in TABLE1}))
