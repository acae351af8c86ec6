"""Test example reproduction, group-level and arithmetic-only."""

import time

import pytest

from fitlen.catalog import get_catalog
from fitlen.config import configure, load_config
from fitlen.errors import UsageError
from fitlen.tools.reproduce_example import (
    ARITHMETIC_ONLY,
    arithmetic_entries,
    claimed_profile,
    compare_claims,
    list_examples,
    reproduce_example,
)


def _entry(doc_or_entries, name):
    entries = doc_or_entries if isinstance(doc_or_entries, list) else doc_or_entries.arithmetic
    return next(e for e in entries if e.name == name)


def _statuses(doc):
    return {c.quantity: c.status for c in doc.claims}


def test_claimed_profile():
    example = get_catalog().get_example("wreath-over-pair")

    values = claimed_profile(example, 3)

    assert values[frozenset({2, 3, 5})] == 7
    assert values[frozenset({3, 5})] == 6
    assert values[frozenset({2, 3})] == 2


def test_wreath_over_pair_measured():
    start = time.perf_counter()
    doc = reproduce_example("wreath-over-pair", 1)
    elapsed = time.perf_counter() - start

    assert doc.notices == []
    assert doc.summary.degree == 30
    assert doc.report.h_actual == 3
    assert set(_statuses(doc).values()) == {"MATCH"}
    assert doc.exit_code == 0
    assert doc.report.profile == {"{2}": 1, "{3}": 1, "{5}": 1, "{2,3}": 2, "{2,5}": 2, "{3,5}": 2, "{2,3,5}": 3}
    triangle = [
        e
        for e in doc.report.entries
        if e.name == "cover" and e.inputs["t"] == "3" and "{2,3,5}" not in e.inputs["cover"]
    ]
    assert [(e.numerator, e.denominator, e.status) for e in triangle] == [(4, 1, "PASS")]
    assert elapsed < 60


def test_direct_with_pair_measured():
    start = time.perf_counter()
    doc = reproduce_example("direct-with-pair", 1)
    elapsed = time.perf_counter() - start

    assert doc.report.profile["{2,3}"] == 1
    assert doc.report.profile["{3,5}"] == 2
    assert set(_statuses(doc).values()) == {"MATCH"}
    assert doc.exit_code == 0
    assert doc.report.h_actual == 2
    assert elapsed < 30


@pytest.mark.slow
def test_two_towers_measured():
    start = time.perf_counter()
    doc = reproduce_example("two-towers", 1)
    elapsed = time.perf_counter() - start

    assert doc.summary.degree == 90
    assert doc.report.h_actual == 4
    assert set(_statuses(doc).values()) == {"MATCH"}
    assert doc.report.passed
    assert elapsed < 300


@pytest.mark.extended
def test_three_towers_measured():
    doc = reproduce_example("three-towers", 1, extended=True)

    assert doc.notices == []
    assert doc.report.h_actual == 6
    assert set(_statuses(doc).values()) == {"MATCH"}


def test_three_towers_needs_extended_budget():
    doc = reproduce_example("three-towers", 1)

    assert doc.notices == [f"{ARITHMETIC_ONLY}: group-level run needs the extended budget (--extended)"]
    assert doc.report is None
    assert doc.config["extended"] is False
    note = _entry(doc, "two-complements").note
    assert note.endswith("gives 7 and would hold")


def test_three_towers_arithmetic_at_two():
    doc = reproduce_example("three-towers", 2)

    assert doc.notices == [f"{ARITHMETIC_ONLY}: group-level runs stop at ell = 1"]
    assert _entry(doc, "cover").value == 16
    assert _entry(doc, "three-halls").value == 16
    assert _entry(doc, "pair-product").value == 42
    assert _entry(doc, "recursion").value == 16
    assert _entry(doc, "pairs").value == 16
    complements = _entry(doc, "two-complements")
    assert complements.status == "N/A"
    assert complements.note.endswith("gives 11 and would fail")
    assert _statuses(doc)["Theta(R*)-2 from printed h values"] == "MATCH"
    assert doc.exit_code == 0


def test_six_towers_arithmetic():
    doc = reproduce_example("six-towers", 1)

    assert doc.notices == [f"{ARITHMETIC_ONLY}: no group expression is catalogued"]
    assert doc.expression.startswith("[P wr Q]_l")
    assert doc.config["primes"] == "{2,3,5,7}"
    cover = _entry(doc, "cover")
    assert cover.value == 14
    assert cover.inputs["theta"] == "30"
    assert cover.note.endswith("h(G_5') + h(G_7') = 17")
    assert _entry(doc, "three-halls").value == 17
    assert _entry(doc, "pair-product").value == 49
    assert _entry(doc, "two-complements").note == "not every complement value is printed"
    statuses = _statuses(doc)
    assert statuses["h(G)"] == "CLAIMED"
    assert statuses["three-halls(2,3) from printed h values"] == "MATCH"
    assert doc.exit_code == 0


@pytest.mark.parametrize("ell", [1, 2, 5, 10])
def test_six_towers_bounds_hold_for_every_ell(ell):
    example = get_catalog().get_example("six-towers")

    entries = arithmetic_entries(example, ell)

    assert all(e.status != "VIOLATION" for e in entries)
    assert _entry(entries, "three-halls").value == 12 * ell + 5


def test_measured_mismatch_sets_exit_code():
    example = get_catalog().get_example("direct-with-pair")
    measured = {
        frozenset({2, 3, 5}): 3,
        frozenset({2, 3}): 1,
        frozenset({2, 5}): 1,
        frozenset({3, 5}): 2,
    }

    rows = compare_claims(example, 1, measured)

    by_quantity = {r.quantity: r for r in rows}
    assert by_quantity["h(G)"].status == "MISMATCH"
    assert by_quantity["h(G_2')"].status == "MATCH"
    assert by_quantity["Theta(R*)-2"].measured == 2


def test_degree_budget_downgrades():
    configure(load_config(max_degree=20))

    doc = reproduce_example("wreath-over-pair", 1)

    assert doc.notices == [f"{ARITHMETIC_ONLY}: degree budget exceeded (required 30 > 20)"]
    assert doc.summary is None
    assert all(c.status in ("CLAIMED", "MATCH") for c in doc.claims)
    assert doc.arithmetic
    assert doc.exit_code == 0


def test_invalid_arguments():
    with pytest.raises(UsageError, match="iteration count"):
        reproduce_example("wreath-over-pair", 0)
    with pytest.raises(UsageError, match="unknown example"):
        reproduce_example("seven-towers", 1)


def test_list_examples():
    text = list_examples()

    assert "- **six-towers** [3.5-arith]:" in text
    assert "(arithmetic only)" in text
    assert "(group-level up to ell = 1, extended budget)" in text
