"""Compare two entity-resolution clusterings without a truth set.

Every baseline (ER1) cluster is classified against the counterpart (ER2)
clustering as unchanged, merged, partitioned or overlapping. Profile
counts, singletons and the Talburt-Wang index come along with it.

>>> from casecount import compare, datasets
>>> result = compare(*datasets.table1())
>>> result.forward.as_tuple(), result.reverse.as_tuple(), result.v
((2, 2, 1, 2), (2, 3, 1, 2), 11)
"""

from .classify import OverlapIndex, build_overlap_index, classify_all, classify_cluster
from .ingest import (
    DroppedReferences,
    IngestOptions,
    IngestWarning,
    ParseError,
    load_merged,
    load_single,
    load_split,
    write_merged,
    write_single,
)
from .metrics import compare, compute_profile, compute_twi, list_singletons
from .model import (
    CaseClassification,
    CaseCountError,
    CaseCounts,
    CaseKind,
    Clustering,
    ComparisonResult,
    DomainError,
    DuplicateReference,
    DuplicateRow,
    EmptyInput,
    InvalidIdentifier,
    Profile,
    ReferenceSetMismatch,
    Side,
    SweepRow,
    build_clustering,
    clustering_from_groups,
)
from .report import (
    ReportOptions,
    export_html,
    export_json,
    load_json,
    render_detail,
    render_summary,
    render_sweep,
)

__version__ = "0.1.0"
