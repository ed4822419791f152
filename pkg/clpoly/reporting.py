# clpoly/reporting.py
import csv
import io
import json
import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List

from pydantic import BaseModel
from sympy import Poly

from .data_models import Report, poly_to_json

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """
    Convert models, Fractions and Polys into plain JSON values.

    Fractions become "p/q" strings and polynomials ascending coefficient
    string lists, matching the model serializers.
    """
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Poly):
        return poly_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def report_dict(report: Report) -> Dict[str, Any]:
    data = report.model_dump(mode="json")
    if report.timing is None:
        data.pop("timing", None)
    return data


def render_json(report: Report) -> str:
    return json.dumps(report_dict(report), sort_keys=True, indent=2, ensure_ascii=False)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return str(value)


def table_rows(report: Report) -> List[Dict[str, Any]]:
    rows = report.results.get("rows")
    if not isinstance(rows, list):
        raise ValueError(f"'{report.command}' results have no rows table")
    return rows


def render_csv(report: Report) -> str:
    """Header row plus one line per result row; nested values are compact JSON."""
    rows = table_rows(report)
    if not rows:
        return ""
    buf = io.StringIO()
    header = list(rows[0].keys())
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def _text_lines(value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_cell(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_cell(item)}")
    else:
        lines.append(f"{pad}{_cell(value)}")
    return lines


def _is_flat(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def render_table(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return "(no rows)"
    header = list(rows[0].keys())
    cells = [[_cell(r.get(k)) for k in header] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)
    return "\n".join(lines)


def render_text(report: Report) -> str:
    """Human-readable rendering: the rows table when present, else an indented tree."""
    data = report_dict(report)
    lines = [f"clpoly {data['version']} {data['command']} (digits={data['precision']})"]
    results = dict(data["results"])
    rows = results.pop("rows", None)
    lines.extend(_text_lines(results, 0))
    if isinstance(rows, list):
        lines.append(render_table([{k: v for k, v in r.items() if not isinstance(v, (dict, list))} for r in rows]))
    if "timing" in data:
        lines.append(f"timing: {data['timing']:.3f}s")
    return "\n".join(lines)
