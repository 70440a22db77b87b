"""
Sweeping a parameter against a fixed baseline
=============================================

A sweep compares one baseline clustering with several variants, one row per
variant. Here the variants come from the perturbation generator: lowering a
match threshold tends to merge clusters, raising it tends to split them, so
we mimic that with pure merges below the baseline and pure splits above.
"""

import random

from casecount import Side, SweepRow, compare, render_sweep
from casecount.oracle import perturb, random_clustering, random_edit_script

rng = random.Random(2024)
baseline = random_clustering(rng, n_refs=1000, max_clusters=300)
print(baseline)

######################################################################
# Build the variants. Rows are keyed by the (made up) parameter value.

rows = []
for step, label in enumerate(["0.37", "0.47", "0.57", "0.67", "0.77", "0.87", "0.97"]):
    distance = step - 3
    if distance < 0:
        script = random_edit_script(baseline, rng, "merge", n_edits=-distance * 40)
    elif distance > 0:
        script = random_edit_script(baseline, rng, "split", n_edits=distance * 40)
    else:
        script = []
    variant, expected = perturb(baseline, script)
    result = compare(baseline, variant)
    assert result.forward == expected
    rows.append(SweepRow.from_result(label, result))

######################################################################
# The baseline row compares the baseline with itself and is flagged.
# Merges never produce PC or OC, splits never produce MC or OC.

print(render_sweep(rows, baseline_label="0.67"))
print(render_sweep(rows, baseline_label="0.67", fmt="csv"))
