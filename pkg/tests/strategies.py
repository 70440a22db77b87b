"""Hypothesis strategies for pairs of partitions over one reference set."""

from hypothesis import strategies as st

from casecount import Clustering, Side


@st.composite
def partition_pairs(draw, max_refs=50, max_clusters=10):
    n = draw(st.integers(1, max_refs))
    refs = [f"r{i}" for i in range(n)]
    labels = st.integers(0, max_clusters - 1)
    first = draw(st.lists(labels, min_size=n, max_size=n))
    if draw(st.booleans()):
        # coarsen or refine the first labelling so nested clusters show up
        second = [lab // 2 for lab in first] if draw(st.booleans()) else \
            [lab * 3 + draw(st.integers(0, 2)) % 3 for lab in first]
    else:
        second = draw(st.lists(labels, min_size=n, max_size=n))
    return (Clustering(Side.BASELINE, {r: f"a{x}" for r, x in zip(refs, first)}),
            Clustering(Side.COUNTERPART, {r: f"b{x}" for r, x in zip(refs, second)}))
