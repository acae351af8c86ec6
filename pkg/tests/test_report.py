"""Test text tables and the key/value serialization."""

import re
from fractions import Fraction
from pathlib import Path

from ruamel.yaml import YAML

from fitlen.bounds import bound_entry, check_all, not_applicable
from fitlen.construct import build
from fitlen.dsl import parse_expression
from fitlen.models import ClaimComparison, ReportDocument
from fitlen.report import (
    document_kv,
    dump_kv,
    entry_row,
    flatten,
    format_document,
    result_word,
    text_table,
)
from fitlen.tools import reproduce_example, resolve_group, run_check


def test_text_table_alignment():
    lines = text_table(["a", "long"], [["xyz", 1], ["q", 22]], indent="")

    assert lines == ["a    long", "---  ----", "xyz  1", "q    22"]


def test_entry_row_for_not_applicable():
    row = entry_row(not_applicable("pairs", 2, "needs w >= 3, w = 2"))

    assert row == ["pairs", "-", "h(G)", "2", "-", "-", "-", "N/A", "needs w >= 3, w = 2"]


def test_entry_row_fraction():
    row = entry_row(bound_entry("cover", 3, Fraction(7, 2), {"t": "4"}))

    assert row[4] == "7/2"
    assert row[5] == "3"
    assert row[6] == "1/2"


def test_flatten():
    pairs = flatten({"a": {"b": 1, "c": [2, {"d": 3}]}, "e": {}})

    assert pairs == [("a.b", 1), ("a.c.0", 2), ("a.c.1.d", 3)]


def test_dump_kv_is_yaml():
    text = dump_kv([("x", 1), ("y.z", "w")], [["bounds", "cover", "PASS"]])

    data = YAML(typ="safe").load(text)
    assert data == {"x": 1, "y.z": "w", "table": [["bounds", "cover", "PASS"]]}
    assert "table:\n- [bounds, cover, PASS]\n" in text


def test_result_word():
    doc = ReportDocument(tool_version="1.0.0", command="example x", expression="-")
    assert result_word(doc) == "PASS"

    doc.claims.append(ClaimComparison(quantity="h(G)", formula="2l", claimed=2, measured=3))
    assert result_word(doc) == "MISMATCH"

    doc.claims.clear()
    doc.arithmetic.append(bound_entry("cover", 5, 4, {}))
    assert result_word(doc) == "VIOLATION"
    assert doc.exit_code == 2


def test_check_document_text():
    doc = run_check(resolve_group("W(C(2,1),C(3,1))"))

    text = format_document(doc)

    assert text.startswith("fitlen 1.0.0 check\nexpression: W(C(2,1),C(3,1))\n")
    assert "h(G) = 2    w(G) = 2" in text
    assert "max Hall length by subset size: 0:0  1:1  2:2" in text
    assert "timings:" not in text
    assert "timings:" in format_document(doc, timings=True)
    assert text.endswith("result: PASS\n")


def test_kv_output_is_deterministic():
    first = document_kv(run_check(resolve_group("W(C(2,1),C(3,1))")))
    second = document_kv(run_check(resolve_group("W(C(2,1),C(3,1))")))

    assert first == second
    assert "timings" not in first
    data = YAML(typ="safe").load(first)
    assert data["result"] == "PASS"
    assert data["exit_code"] == 0
    assert data["report.h_actual"] == 2
    assert data["table"][0][:2] == ["section", "bound"]


def test_kv_example_rows():
    data = YAML(typ="safe").load(document_kv(reproduce_example("six-towers", 1)))

    table = data["table"]
    headers = [row for row in table if row[0] == "section"]
    assert table[0][:2] == ["section", "bound"]
    assert headers[1][:4] == ["section", "quantity", "formula", "claimed (printed)"]
    assert {row[0] for row in table} == {"section", "arithmetic", "claims"}
    assert data["notices.0"].startswith("arithmetic-only at this scale")


def test_documented_entry_names_cover_check_output():
    doc = (Path(__file__).parent.parent / "docs" / "report-format.md").read_text(encoding="utf-8")
    documented = set(re.findall(r"^\| `([a-z-]+)` \|", doc, flags=re.MULTILINE))

    emitted = set()
    for text in ("W(C(2,1),W(C(3,1),C(5,1)))", "D(D(C(2,1),C(3,1)),D(C(5,1),C(7,1)))"):
        emitted |= {e.name for e in check_all(build(parse_expression(text))).entries}

    assert {"cover", "three-halls", "two-complements", "recursion", "pairs"} <= emitted
    assert emitted <= documented
