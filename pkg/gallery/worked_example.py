"""
Comparing two clusterings of sixteen references
===============================================

Two ER runs over the same 16 references. The first run (ER1) forms 7
clusters, the second (ER2) forms 8. We classify each ER1 cluster by what
ER2 did to it, then look at the same comparison from the other side.
"""

from casecount import compare, datasets, render_summary

baseline, counterpart = datasets.table1()
print(baseline)
print(counterpart)

######################################################################
# The clusters themselves, as member tuples keyed by cluster id

for cid, refs in baseline.members.items():
    print("ER1", cid, refs)
for cid, refs in counterpart.members.items():
    print("ER2", cid, refs)

######################################################################
# Run the comparison. Every ER1 cluster gets exactly one verdict.

result = compare(baseline, counterpart)
for c in result.forward_classifications:
    print(f"{c.cluster}: {c.kind.value:<12} via {', '.join(c.counterpart_clusters)}")

######################################################################
# The counts. Forward and reverse differ because the cluster counts
# differ, but the unchanged count is the same both ways.

print("forward  (UC, MC, PC, OC):", result.forward.as_tuple())
print("reverse  (UC, MC, PC, OC):", result.reverse.as_tuple())
print("non-empty intersections:", result.v)
print(f"TWI: {result.twi:.4f}")

######################################################################
# The same numbers in report form

print(render_summary(result))
