"""Views of a :class:`~casecount.model.ComparisonResult`.

Every renderer here is a pure function of the result and a
:class:`ReportOptions`; output is byte-deterministic.
"""

from __future__ import annotations

import csv
import html
import io
import json
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .model import (
    CASE_KINDS,
    CaseKind,
    Clustering,
    ComparisonResult,
    Side,
    SweepRow,
)

FORMATS = ("text", "json", "csv-detail", "html")
DIRECTIONS = ("forward", "reverse", "both")
DETAIL_HEADER = ("rec_id", "er1_cluster", "er2_cluster", "forward_case", "reverse_case")
JSON_SCHEMA = "casecount.comparison/1"


@dataclass(frozen=True)
class ReportOptions:
    format: str = "text"
    case_filter: Optional[FrozenSet[CaseKind]] = None
    direction: str = "both"
    max_detail_rows: Optional[int] = None
    twi_precision: Optional[int] = None

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")
        if self.case_filter is not None:
            kinds = frozenset(CaseKind(k) for k in self.case_filter)
            if not kinds:
                raise ValueError("case_filter, when given, must name at least one case")
            object.__setattr__(self, "case_filter", kinds)
        if self.max_detail_rows is not None and self.max_detail_rows < 0:
            raise ValueError("max_detail_rows must be >= 0")
        if self.twi_precision is not None and not 0 <= self.twi_precision <= 17:
            raise ValueError("twi_precision must be between 0 and 17")

    @property
    def precision(self) -> int:
        if self.twi_precision is not None:
            return self.twi_precision
        return 2 if self.format == "text" else 4


def round_half_up(value: float, places: int) -> Decimal:
    return Decimal(repr(value)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def render_summary(result: ComparisonResult, options: ReportOptions = ReportOptions()) -> str:
    """The two-direction case report, followed by RC, |V| and TWI."""
    p = result.profile
    lines = ["Detailed Summary Report"]
    if options.direction in ("forward", "both"):
        lines.append("ER1 as primary and ER2 as secondary:")
        lines += [f"{k.value} (Case {k.case_number()}): {n}" for k, n in zip(CASE_KINDS, result.forward.as_tuple())]
        lines += [f"ER1 clusters: {p.cc1}", ""]
    if options.direction in ("reverse", "both"):
        lines.append("ER2 as primary and ER1 as secondary:")
        lines += [f"{k.value} (Case {k.case_number(True)}): {n}" for k, n in zip(CASE_KINDS, result.reverse.as_tuple())]
        lines += [f"ER2 clusters: {p.cc2}", ""]
    lines += [
        f"Total clusters: {p.cc1 + p.cc2}",
        "",
        "Singletons:",
        f"ER1 Singletons: {p.sc1}",
        f"ER2 Singletons: {p.sc2}",
        "",
        "Additional metrics:",
        f"References (RC): {p.rc}",
        f"Non-empty intersections (|V|): {result.v}",
        f"TWI: {round_half_up(result.twi, options.precision)}",
    ]
    return "\n".join(lines) + "\n"


def detail_rows(result: ComparisonResult, options: ReportOptions = ReportOptions()) -> List[Tuple[str, str, str, str, str]]:
    """One row per reference, ordered by ER1 cluster then RecID, filtered by case."""
    wanted = options.case_filter
    other = result.counterpart.assignment
    rows = []
    for c in result.forward_classifications:
        fwd = c.kind
        for r in result.baseline.members[c.cluster]:
            b = other[r]
            rev = result.reverse_kind(b)
            if wanted is not None:
                hit_f = fwd in wanted and options.direction != "reverse"
                hit_r = rev in wanted and options.direction != "forward"
                if not (hit_f or hit_r):
                    continue
            rows.append((r, c.cluster, b, fwd.value, rev.value))
            if options.max_detail_rows is not None and len(rows) >= options.max_detail_rows:
                return rows
    return rows


def _table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> List[str]:
    rows = [list(map(str, r)) for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    fmt = lambda r: "  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip()
    return [fmt(header)] + [fmt(r) for r in rows]


def render_detail(result: ComparisonResult, options: ReportOptions = ReportOptions()) -> str:
    """Per-reference listing; CSV when ``options.format`` is ``csv-detail``."""
    rows = detail_rows(result, options)
    if options.format == "csv-detail":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(DETAIL_HEADER)
        writer.writerows(rows)
        return buf.getvalue()
    kinds = ", ".join(sorted(k.value for k in options.case_filter)) if options.case_filter else "all"
    out = [f"Cluster detail (cases: {kinds}; direction: {options.direction})"]
    out += _table(("RecID", "ER1 cluster", "ER2 cluster", "ER1->ER2 case", "ER2->ER1 case"), rows)
    out.append(f"{len(rows)} row(s)")
    return "\n".join(out) + "\n"


def render_sweep(rows: Sequence[SweepRow], baseline_label: Optional[str] = None, fmt: str = "text") -> str:
    """Sweep table in CC1 SC1 UC MC PC OC CC2 SC2 order; the baseline row is flagged."""
    if not rows:
        raise ValueError("a sweep table needs at least one row")
    header = ("label",) + SweepRow.COLUMNS + ("baseline",)
    body = [(row.label,) + row.values() + ("*" if row.label == baseline_label else "",) for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"sweep format must be 'text' or 'csv', got {fmt!r}")
    return "\n".join(_table(header, body)) + "\n"


def _classification_doc(c) -> dict:
    return {
        "cluster": c.cluster,
        "case": c.kind.value,
        "case_number": c.case_number,
        "size": c.size,
        "counterparts": list(c.counterpart_clusters),
        "intersections": {b: list(refs) for b, refs in c.intersections.items()},
    }


def _counts_doc(counts) -> dict:
    return {"unchanged": counts.uc, "merged": counts.mc, "partitioned": counts.pc, "overlapping": counts.oc}


def _shares(counts, total: int) -> List[float]:
    return [round(n / total, 6) for n in counts.as_tuple()]


def result_document(result: ComparisonResult, twi_precision: int = 4) -> dict:
    p = result.profile
    return {
        "schema": JSON_SCHEMA,
        "profile": {"rc": p.rc, "cc1": p.cc1, "sc1": p.sc1, "cc2": p.cc2, "sc2": p.sc2},
        "forward": _counts_doc(result.forward),
        "reverse": _counts_doc(result.reverse),
        "v": result.v,
        "twi": float(round_half_up(result.twi, twi_precision)),
        "twi_precision": twi_precision,
        "singletons": {"er1": list(result.singletons_1), "er2": list(result.singletons_2)},
        "classifications": {
            "forward": [_classification_doc(c) for c in result.forward_classifications],
            "reverse": [_classification_doc(c) for c in result.reverse_classifications],
        },
        "charts": {
            "case_counts": {
                "categories": [k.value for k in CASE_KINDS],
                "forward": list(result.forward.as_tuple()),
                "reverse": list(result.reverse.as_tuple()),
            },
            "case_proportions": {
                "categories": [k.value for k in CASE_KINDS],
                "forward": _shares(result.forward, p.cc1),
                "reverse": _shares(result.reverse, p.cc2),
            },
            "cluster_totals": {"categories": ["ER1", "ER2"], "values": [p.cc1, p.cc2]},
        },
    }


def export_json(result: ComparisonResult, twi_precision: int = 4) -> str:
    """Serialize a result as an indented JSON document with fixed key order."""
    return json.dumps(result_document(result, twi_precision), indent=2, ensure_ascii=False) + "\n"


def load_json(text: str) -> ComparisonResult:
    """Rebuild a result from :func:`export_json` output.

    The clusterings are recovered from the forward intersections and the
    comparison is recomputed; stored counts that disagree raise ``ValueError``.
    """
    from .metrics import compare

    doc = json.loads(text)
    if doc.get("schema") != JSON_SCHEMA:
        raise ValueError(f"unsupported document schema {doc.get('schema')!r}")
    first: Dict[str, str] = {}
    second: Dict[str, str] = {}
    for entry in doc["classifications"]["forward"]:
        for b, refs in entry["intersections"].items():
            for r in refs:
                first[r] = entry["cluster"]
                second[r] = b
    result = compare(Clustering(Side.BASELINE, first), Clustering(Side.COUNTERPART, second))
    if result_document(result, doc.get("twi_precision", 4)) != doc:
        raise ValueError("document is internally inconsistent: recomputed counts differ")
    return result


# --- static HTML ---------------------------------------------------------

_COLORS = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759")


def _svg_bars(title: str, categories: Sequence[str], series: Sequence[Tuple[str, Sequence[int]]]) -> str:
    width, height, pad = 480, 260, 40
    top = max([1] + [v for _, vals in series for v in vals])
    group_w = (width - 2 * pad) / len(categories)
    bar_w = group_w * 0.8 / len(series)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" role="img">',
             f'<title>{html.escape(title)}</title>',
             f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="#333"/>']
    for gi, cat in enumerate(categories):
        gx = pad + gi * group_w + group_w * 0.1
        for si, (_, vals) in enumerate(series):
            h = (height - 2 * pad) * vals[gi] / top
            x = gx + si * bar_w
            y = height - pad - h
            parts.append(f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar_w:.1f}" height="{h:.1f}" '
                         f'fill="{_COLORS[si % len(_COLORS)]}"><title>{html.escape(cat)}: {vals[gi]}</title></rect>')
            parts.append(f'<text x="{x + bar_w / 2:.1f}" y="{y - 3:.1f}" font-size="11" '
                         f'text-anchor="middle">{vals[gi]}</text>')
        parts.append(f'<text x="{pad + (gi + 0.5) * group_w:.1f}" y="{height - pad + 16}" font-size="12" '
                     f'text-anchor="middle">{html.escape(cat)}</text>')
    for si, (name, _) in enumerate(series):
        parts.append(f'<rect x="{pad + si * 110}" y="8" width="10" height="10" fill="{_COLORS[si % len(_COLORS)]}"/>'
                     f'<text x="{pad + si * 110 + 14}" y="17" font-size="12">{html.escape(name)}</text>')
    parts.append("</svg>")
    return "".join(parts)


def _svg_pie(title: str, categories: Sequence[str], values: Sequence[int]) -> str:
    size, r = 260, 100
    cx = cy = size / 2
    total = sum(values)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 160}" height="{size}" role="img">',
             f'<title>{html.escape(title)}</title>']
    angle = -math.pi / 2
    for i, (cat, n) in enumerate(zip(categories, values)):
        color = _COLORS[i % len(_COLORS)]
        if n and n == total:
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{color}"/>')
        elif n:
            sweep = 2 * math.pi * n / total
            x0, y0 = cx + r * math.cos(angle), cy + r * math.sin(angle)
            angle += sweep
            x1, y1 = cx + r * math.cos(angle), cy + r * math.sin(angle)
            large = 1 if sweep > math.pi else 0
            parts.append(f'<path d="M{cx:.1f},{cy:.1f} L{x0:.2f},{y0:.2f} A{r},{r} 0 {large} 1 {x1:.2f},{y1:.2f} Z" '
                         f'fill="{color}"><title>{html.escape(cat)}: {n}</title></path>')
        share = 100.0 * n / total if total else 0.0
        parts.append(f'<rect x="{size}" y="{40 + 22 * i}" width="10" height="10" fill="{color}"/>'
                     f'<text x="{size + 14}" y="{49 + 22 * i}" font-size="12">'
                     f'{html.escape(cat)} {share:.1f}%</text>')
    parts.append("</svg>")
    return "".join(parts)


def export_html(result: ComparisonResult, options: ReportOptions = ReportOptions(format="html")) -> str:
    """A self-contained page: summary, detail table, three charts, embedded JSON data."""
    doc = result_document(result)
    payload = json.dumps(doc, ensure_ascii=False, separators=(",", ":")).replace("</", "<\\/")
    text_opts = ReportOptions(format="text", case_filter=options.case_filter, direction=options.direction,
                              max_detail_rows=options.max_detail_rows, twi_precision=options.twi_precision)
    rows = detail_rows(result, text_opts)
    cats = doc["charts"]["case_counts"]["categories"]
    charts = [
        _svg_bars("Case counts", cats, [("ER1 -> ER2", doc["charts"]["case_counts"]["forward"]),
                                        ("ER2 -> ER1", doc["charts"]["case_counts"]["reverse"])]),
        _svg_pie("Case proportions (ER1 -> ER2)", cats, doc["charts"]["case_counts"]["forward"]),
        _svg_bars("Cluster totals", ["ER1", "ER2"], [("clusters", doc["charts"]["cluster_totals"]["values"])]),
    ]
    out = [
        "<!DOCTYPE html>",
        '<html lang="en"><head><meta charset="utf-8"><title>Cluster comparison report</title>',
        "<style>body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}"
        "td,th{border:1px solid #ccc;padding:2px 8px}pre{background:#f6f6f6;padding:1em}</style>",
        "</head><body>",
        "<h1>Cluster comparison report</h1>",
        "<h2>Summary</h2>",
        f"<pre>{html.escape(render_summary(result, text_opts))}</pre>",
        "<h2>Charts</h2>",
        '<div class="charts">',
        *(f'<figure>{svg}</figure>' for svg in charts),
        "</div>",
        f"<h2>Detail ({len(rows)} rows)</h2>",
        '<table id="detail"><thead><tr>' + "".join(f"<th>{h}</th>" for h in DETAIL_HEADER) + "</tr></thead><tbody>",
        *("<tr>" + "".join(f"<td>{html.escape(v)}</td>" for v in row) + "</tr>" for row in rows),
        "</tbody></table>",
        f'<script type="application/json" id="comparison-data">{payload}</script>',
        "</body></html>",
    ]
    return "\n".join(out) + "\n"


def render(result: ComparisonResult, options: ReportOptions = ReportOptions(), detail: bool = False) -> str:
    """Dispatch on ``options.format``; text adds the detail listing when asked or filtered."""
    if options.format == "json":
        return export_json(result, options.precision)
    if options.format == "html":
        return export_html(result, options)
    if options.format == "csv-detail":
        return render_detail(result, options)
    text = render_summary(result, options)
    if detail or options.case_filter is not None:
        text += "\n" + render_detail(result, options)
    return text
