"""
Looking only at the clusters that changed
=========================================

Counts say how much changed; the detail listing shows which references
were involved. Filtering by case narrows the listing to the clusters worth
a closer look.
"""

from casecount import CaseKind, ReportOptions, compare, datasets, render_detail

result = compare(*datasets.table1())

######################################################################
# Every reference with both verdicts: the fate of its ER1 cluster under
# ER2, and the fate of its ER2 cluster under ER1.

print(render_detail(result))

######################################################################
# Overlapping clusters only. These are the reorganizations that neither
# split nor merge cleanly.

print(render_detail(result, ReportOptions(case_filter=frozenset({CaseKind.OVERLAPPING}))))

######################################################################
# Partitioned clusters as CSV, seen from ER1 only

opts = ReportOptions(format="csv-detail", case_filter=frozenset({CaseKind.PARTITIONED}),
                     direction="forward")
print(render_detail(result, opts))

######################################################################
# Intersections are kept on each classification, so evidence can also be
# pulled out directly.

for c in result.forward_classifications:
    if c.kind is not CaseKind.UNCHANGED:
        print(c.cluster, c.kind.value, dict(c.intersections))
