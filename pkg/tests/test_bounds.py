"""Test covers, the bound formulas and full bound checks."""

from fractions import Fraction

import pytest

from fitlen.bounds import (
    bound_entry,
    canonical_cover,
    check_all,
    complement_inequality_sweep,
    cover_bound,
    cover_properties,
    cover_weight,
    enumerate_covers,
    factorized_bound,
    is_cover,
    make_cover,
    not_applicable,
    pair_product_bound,
    pairs_bound,
    parse_cover,
    recursion_bound,
    recursion_bound_simplified,
    three_halls_bound,
    two_complements_bound,
)
from fitlen.config import configure, load_config
from fitlen.construct import build
from fitlen.dsl import parse_expression
from fitlen.errors import InvalidCoverError, UsageError
from fitlen.hall import HallProfile, all_subsets


@pytest.fixture
def three_prime_profile():
    """Profile of C2 wr (C3 wr C5)."""
    values = {s: len(s) for s in all_subsets([2, 3, 5]) if s}
    return HallProfile([2, 3, 5], values)


def test_is_cover():
    assert is_cover([{2, 3}, {3, 5}, {2, 5}], {2, 3, 5}) == (True, False)
    assert is_cover([{2}, {3}, {2, 3}], {2, 3}) == (True, True)
    assert is_cover([{2}, {3}, {5}], {2, 3, 5}) == (False, False)
    assert is_cover([{2, 3}, {2, 3}, {2, 3}], {2, 3}) == (False, True)


def test_make_cover_sorts_members():
    cover = make_cover([{2, 3, 5}, {5}, {2, 3}], {2, 3, 5})

    assert cover.text() == "{{5},{2,3},{2,3,5}}"
    assert cover.t == 3
    assert cover.degenerate


def test_make_cover_rejects_non_cover():
    with pytest.raises(InvalidCoverError, match=r"is not a cover of \{2,3,5\}"):
        make_cover([{2}, {3, 5}, {2, 3}], {2, 3, 5})


def test_parse_cover():
    cover = parse_cover("{2,3};{3,5};{2,5}", [2, 3, 5])

    assert cover == canonical_cover([5, 3, 2])
    assert not cover.degenerate


def test_canonical_cover_needs_three_primes():
    assert canonical_cover([2, 3]) is None


def test_enumerate_covers_of_three_primes():
    three = enumerate_covers([2, 3, 5], 3)
    four = enumerate_covers([2, 3, 5], 4)

    assert len(three) == 7
    assert sum(1 for c in three if not c.degenerate) == 1
    assert [c.text() for c in four] == ["{{2,3},{2,5},{3,5},{2,3,5}}"]
    assert enumerate_covers([2, 3, 5], 4, include_degenerate=False) == []


def test_two_primes_have_one_three_cover():
    covers = enumerate_covers([2, 3], 3)

    assert [c.text() for c in covers] == ["{{2},{3},{2,3}}"]


@pytest.mark.parametrize("t", [3, 4, 5])
def test_enumerated_covers_are_covers(t):
    for cover in enumerate_covers([2, 3, 5, 7], t):
        assert is_cover(cover.members, cover.ground)[0]
        assert cover_properties(cover) == []


def test_enumerate_covers_limits():
    with pytest.raises(UsageError, match="t >= 3"):
        enumerate_covers([2, 3, 5], 2)
    configure(load_config(cover_ground_limit=2))
    with pytest.raises(UsageError, match="ground sets of size 2"):
        enumerate_covers([2, 3, 5], 3)


def test_cover_weight_and_bound(three_prime_profile):
    cover = canonical_cover([2, 3, 5])

    theta = cover_weight(cover, three_prime_profile)

    assert theta == 6
    assert cover_bound(theta, cover.t) == 4
    assert cover_bound(9, 4) == Fraction(7, 2)
    with pytest.raises(UsageError):
        cover_bound(5, 2)


def test_three_halls_bound(three_prime_profile):
    assert three_halls_bound(three_prime_profile, {2, 3}, {2, 5}, {3, 5}) == 4
    assert three_halls_bound(three_prime_profile, {2}, {3}, {5}) is None
    assert three_halls_bound(three_prime_profile, {2, 3, 5}, {2, 3, 5}, {2, 3, 5}) == 7


def test_two_complements_bound():
    values = {s: 1 for s in all_subsets([2, 3, 5, 7]) if s}
    values[frozenset({2, 3, 5})] = 3
    values[frozenset({3, 5, 7})] = 4
    profile = HallProfile([2, 3, 5, 7], values)

    assert two_complements_bound(profile) == (6, 2, 7)
    assert two_complements_bound(HallProfile([2, 3], {})) is None


def test_recursion_bounds():
    assert recursion_bound(2, 3) == 4
    assert recursion_bound(3, 4) == 5
    assert recursion_bound(3, 5) == Fraction(13, 3)
    assert recursion_bound_simplified(2, 3) == 4
    assert recursion_bound_simplified(3, 4) == 5
    with pytest.raises(UsageError, match=">= 3"):
        recursion_bound(1, 2)


def test_closed_form_bounds():
    assert pairs_bound(2, 3) == 4
    assert pairs_bound(2, 4) == 7
    assert pair_product_bound(2, 2) == 6
    assert factorized_bound(1, 2, 2) == 10
    with pytest.raises(UsageError):
        pairs_bound(2, 2)
    with pytest.raises(UsageError):
        pair_product_bound(-1, 2)


def test_complement_inequality_sweep():
    holds = complement_inequality_sweep()
    fails = complement_inequality_sweep(range(5, 6), range(1, 2))

    assert holds.passed
    assert holds.checked == 13 * 61
    assert not fails.passed
    assert fails.failures == ["w=5, lambda=1: 1 > 0"]


def test_bound_entry_status():
    tight = bound_entry("cover", 2, Fraction(2), {"t": "3"})
    broken = bound_entry("cover", 5, Fraction(9, 2), {"t": "3"})
    skipped = not_applicable("pairs", 2, "needs w >= 3, w = 2")

    assert tight.status == "PASS"
    assert tight.slack == 0
    assert broken.status == "VIOLATION"
    assert broken.value_text() == "9/2"
    assert broken.floor == 4
    assert skipped.value_text() == "-"


def _by_name(report, name):
    return [e for e in report.entries if e.name == name]


def test_check_all_two_primes():
    report = check_all(build(parse_expression("W(C(2,1),C(3,1))")))

    assert report.passed
    assert report.h_actual == 2
    assert report.profile == {"{2}": 1, "{3}": 1, "{2,3}": 2}
    cover = _by_name(report, "cover")
    assert [e.inputs["cover"] for e in cover] == ["{{2},{3},{2,3}}"]
    assert cover[0].value == 2
    assert _by_name(report, "pair-product")[0].value == 3
    assert _by_name(report, "two-complements")[0].note == "needs w >= 4, w = 2"
    assert _by_name(report, "recursion")[0].status == "N/A"
    assert {e.inputs["A"] for e in _by_name(report, "factorized")} == {"{2}", "{3}"}


def test_check_all_three_primes():
    report = check_all(build(parse_expression("W(C(2,1),W(C(3,1),C(5,1)))")))

    assert report.passed
    assert report.frak == {0: 0, 1: 1, 2: 2, 3: 3}
    assert len(_by_name(report, "cover")) == 8
    assert all(e.value == 4 for e in _by_name(report, "three-halls"))
    assert _by_name(report, "recursion")[0].value == 4
    assert _by_name(report, "recursion-simplified")[0].value == 4
    assert _by_name(report, "pairs")[0].value == 4
    complements = _by_name(report, "two-complements")[0]
    assert complements.status == "N/A"
    assert complements.note.endswith("gives 3 and would hold")
    assert [lemma.name for lemma in report.lemmas] == ["complement-inequality", "cover-structure"]


def test_check_all_options():
    g = build(parse_expression("W(C(2,1),W(C(3,1),C(5,1)))"))

    report = check_all(g, t_max=3, include_cjs=False, sweep=True)

    assert len(_by_name(report, "cover")) == 7
    assert _by_name(report, "factorized") == []
    assert len(_by_name(report, "three-halls")) > 3
    assert report.passed


def test_check_all_large_ground_uses_canonical_cover():
    configure(load_config(cover_ground_limit=2))

    report = check_all(build(parse_expression("W(C(2,1),W(C(3,1),C(5,1)))")))

    assert [e.inputs["cover"] for e in _by_name(report, "cover")] == ["{{2,3},{2,5},{3,5}}"]


def test_check_all_single_prime():
    report = check_all(build(parse_expression("C(2,3)")))

    assert report.passed
    assert report.h_actual == 1
    assert _by_name(report, "cover")[0].note == "no cover of {2}"
    assert _by_name(report, "three-halls")[0].value == 1


@pytest.mark.parametrize("text", ["C(2,1)", "EA(3,2)", "D(C(2,1),C(3,1))", "D(C(2,1),D(C(3,1),C(5,1)))"])
def test_sweep_on_nilpotent_groups(text):
    report = check_all(build(parse_expression(text)), sweep=True)

    assert report.passed, report.violations
    for entry in _by_name(report, "three-halls"):
        assert "{}" not in entry.inputs.values()
