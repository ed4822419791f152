# tests/test_reporting.py

import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from clpoly.data_models import IsolatingInterval, Report, poly_from_coeffs
from clpoly.reporting import (
    render_csv,
    render_json,
    render_table,
    render_text,
    report_dict,
    table_rows,
    to_jsonable,
)


def make_report(results, timing=None, command="bounds"):
    return Report(
        command=command,
        inputs={"degrees": "2..3"},
        results=results,
        precision=3,
        version="0.1.0",
        timing=timing,
    )


ROWS = [
    {"degree": 2, "alpha_tilde": "0.866", "within_disc": True, "interval": ["1", "2"]},
    {"degree": 3, "alpha_tilde": "2.398", "within_disc": False, "interval": ["2", "3"]},
]


def test_to_jsonable_exact_values():
    """Tests that rationals, polynomials and models become plain JSON values."""
    assert to_jsonable(Fraction(1, 2)) == "1/2"
    assert to_jsonable(poly_from_coeffs([1, 0, Fraction(3, 2)])) == ["1", "0", "3/2"]
    assert to_jsonable({"iv": IsolatingInterval(lo=0, hi=Fraction(1, 3))})["iv"]["hi"] == "1/3"
    assert to_jsonable((Fraction(2), None)) == ["2", None]


def test_render_json_is_sorted_and_drops_missing_timing():
    """Tests stable JSON output."""
    text = render_json(make_report({"rows": ROWS}))
    data = json.loads(text)
    assert "timing" not in data
    assert list(data) == sorted(data)
    assert data["results"]["rows"][0]["alpha_tilde"] == "0.866"
    assert "timing" in report_dict(make_report({}, timing=0.25))


def load_schema():
    return json.loads(
        (resources.files("clpoly") / "data" / "report.schema.json").read_text(encoding="utf-8")
    )


def test_render_json_matches_bundled_schema():
    """Tests rendered reports against the bundled JSON schema."""
    schema = load_schema()
    for report in (make_report({"rows": ROWS}, timing=1.5), make_report({"degree": 4}, command="cone")):
        jsonschema.validate(instance=json.loads(render_json(report)), schema=schema)


@pytest.mark.parametrize(
    "field, value",
    [
        ("precision", -1),
        ("version", 1),
        ("command", "plot"),
        ("timing", -0.5),
        ("extra", True),
    ],
)
def test_bundled_schema_rejects_bad_envelopes(field, value):
    """Tests that the schema refuses malformed envelopes."""
    data = json.loads(render_json(make_report({"rows": ROWS}, timing=1.0)))
    data[field] = value
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(instance=data, schema=load_schema())


def test_render_csv():
    """Tests the CSV header, booleans and compact nested values."""
    text = render_csv(make_report({"rows": ROWS}))
    lines = text.splitlines()
    assert lines[0] == "degree,alpha_tilde,within_disc,interval"
    assert lines[1] == '2,0.866,true,"[""1"",""2""]"'
    assert lines[2].startswith("3,2.398,false,")
    assert render_csv(make_report({"rows": []})) == ""


def test_table_rows_requires_rows():
    """Tests that non-tabular results are refused."""
    with pytest.raises(ValueError, match="no rows table"):
        table_rows(make_report({"degree": 4}, command="cone"))


def test_render_table_alignment():
    """Tests right-aligned columns."""
    table = render_table([{"d": 2, "value": "0.866"}, {"d": 10, "value": "31.313"}])
    lines = table.splitlines()
    assert lines[0] == " d   value"
    assert lines[2] == " 2   0.866"
    assert render_table([]) == "(no rows)"


def test_render_text():
    """Tests the human-readable layout with and without rows."""
    text = render_text(make_report({"all_pass": True, "rows": ROWS}, timing=0.5))
    lines = text.splitlines()
    assert lines[0] == "clpoly 0.1.0 bounds (digits=3)"
    assert "all_pass: true" in lines
    assert any("alpha_tilde" in line for line in lines)
    assert lines[-1] == "timing: 0.500s"

    text = render_text(make_report({"form": {"parity": "even", "scale": "1"}}, command="analyze"))
    assert "form:" in text.splitlines()
    assert "  parity: even" in text.splitlines()
