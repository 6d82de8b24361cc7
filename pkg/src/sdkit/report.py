"""Plain-text tables and JSON documents for classification results."""

import json
import re

from .classify import ClassificationReport, LengthReport

HEADER = ("i", "N", "#Aut")
_INDEX = re.compile(r"^L_\{?\d+,(\d+)\}?$")


def lattice_label(name):
    """Table index for catalog names like L_{24,154}; other names pass through."""
    m = _INDEX.match(name or "")
    return m.group(1) if m else (name or "?")


def _rows(reports):
    rows = []
    for rep in reports:
        auts = ", ".join(str(a) for a in rep.aut_orders) or "-"
        rows.append((lattice_label(rep.lattice), str(rep.N), auts))
    return rows


def _as_reports(report):
    if report is None:
        return []
    if isinstance(report, ClassificationReport):
        return [report]
    if isinstance(report, LengthReport):
        return list(report.reports)
    return list(report)


def _format(rows):
    rows = [HEADER] + rows
    widths = [max(len(r[c]) for r in rows) for c in range(len(HEADER))]
    lines = []
    for k, r in enumerate(rows):
        lines.append(" | ".join(r[c].rjust(widths[c]) if c else r[c].ljust(widths[c])
                                for c in range(len(HEADER))).rstrip())
        if k == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_table(report):
    return _format(_rows(_as_reports(report)))


def report_dict(report):
    if isinstance(report, (ClassificationReport, LengthReport)):
        return report.to_dict()
    return {"lattices": [r.to_dict() for r in _as_reports(report)]}


def render_json(report):
    return json.dumps(report_dict(report), indent=2, sort_keys=True) + "\n"


def render_report(report):
    """(table text, JSON text) for a lattice report, a length report or a list."""
    return render_table(report), render_json(report)


def read_report(path):
    with open(path) as fh:
        return json.load(fh)


def table_from_dict(doc):
    """Render a persisted JSON report (lattice or length level) as a table."""
    items = doc.get("lattices", [doc] if "lattice" in doc else [])
    rows = []
    for d in items:
        auts = ", ".join(c["aut_order"] for c in d["codes"]) or "-"
        rows.append((lattice_label(d["lattice"]), str(d["N"]), auts))
    return _format(rows)
