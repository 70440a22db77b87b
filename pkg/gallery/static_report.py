"""
Writing files: JSON, CSV and a static HTML page
===============================================

Results round-trip through JSON. The HTML page is a single offline file
with the summary, detail table and three inline SVG charts.
"""

import json
import tempfile
from pathlib import Path

from casecount import compare, datasets, export_html, export_json, load_json, write_merged, load_merged

out = Path(tempfile.mkdtemp(prefix="casecount-"))
baseline, counterpart = datasets.table1()

######################################################################
# Inputs can be written and read back as a merged three-column CSV

write_merged(out / "table1.csv", baseline, counterpart)
print((out / "table1.csv").read_text())
result = compare(*load_merged(out / "table1.csv"))

######################################################################
# JSON export carries everything needed to rebuild the result

text = export_json(result)
doc = json.loads(text)
print(doc["charts"]["case_counts"])
assert export_json(load_json(text)) == text

######################################################################
# A self-contained page, no network needed to view it

page = out / "report.html"
page.write_text(export_html(result), encoding="utf-8")
print("wrote", page, page.stat().st_size, "bytes")
