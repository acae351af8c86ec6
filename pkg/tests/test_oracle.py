"""Test the brute-force oracle and the factorization checks."""

from itertools import permutations

import pytest

from fitlen.construct import build
from fitlen.dsl import parse_expression
from fitlen.errors import ContainmentError, HallSearchError, OracleScaleError, PairBudgetError, UsageError
from fitlen.group import PermGroup
from fitlen.hall import verify_sylow_system
from fitlen.oracle import (
    check_permutable_nilpotent,
    check_trifactorization,
    closure,
    core_sigma,
    corrupt_system,
    enumerate_group,
    find_hall_subgroup,
    fitting_length_upper,
    fitting_subgroup,
    is_nilpotent_tiny,
    product_set_order,
    quotient,
    subgroup,
    subgroup_pairs,
    verify_core_containment,
)
from fitlen.perm import parse_generator_list
from fitlen.series import fitting_length


def tiny(text, degree=None):
    gens = parse_generator_list(text)
    return closure(gens, degree or gens[0].degree)


def gens(text, degree):
    return parse_generator_list(text, degree=degree)


@pytest.fixture
def s4():
    return tiny("<(1 2),(1 2 3 4)>")


@pytest.fixture
def c2_wr_c3():
    return tiny("<(1 2),(1 3 5)(2 4 6)>")


def test_closure_and_cap(s4):
    assert s4.order == 24
    assert s4.primes == (2, 3)
    assert closure(s4.generators, 4, cap=10) is None


def test_enumerate_group_cap():
    g = PermGroup(parse_generator_list("<(1 2),(1 2 3 4 5 6 7 8)>"))

    with pytest.raises(OracleScaleError, match="above the cap 100"):
        enumerate_group(g, cap=100)


def test_subgroup_rejects_outsider(c2_wr_c3):
    with pytest.raises(ContainmentError):
        subgroup(c2_wr_c3, gens("<(1 3)>", 6))


def test_cores_and_fitting_subgroup(s4):
    assert core_sigma(s4, {2}).order == 4
    assert core_sigma(s4, {3}).order == 1
    assert fitting_subgroup(s4).order == 4
    assert not is_nilpotent_tiny(s4)
    assert is_nilpotent_tiny(tiny("<(1 2 3 4),(1 3)>"))


@pytest.mark.parametrize("group", ["s4", "c2_wr_c3"])
def test_cores_contain_every_normal_sigma_subgroup(group, request):
    g = request.getfixturevalue(group)
    found = {}
    for a in g.elements:
        if a.is_identity():
            continue
        for b in g.elements:
            h = subgroup(g, [a, b])
            if h.is_normal_in(g):
                found[h.keys()] = h

    assert len(found) >= 3
    for sigma in ({2}, {3}, {2, 3}):
        core = core_sigma(g, sigma)
        assert core.is_normal_in(g)
        assert set(core.primes) <= sigma
        for h in found.values():
            if set(h.primes) <= sigma:
                assert h.is_subgroup_of(core)


def test_fitting_subgroup_is_product_of_cores():
    g = tiny("<(1 2),(3 4 5),(3 4)>")

    cores = [core_sigma(g, {p}).order for p in g.primes]

    assert fitting_subgroup(g).order == cores[0] * cores[1] == 6


def test_quotient(s4):
    v4 = subgroup(s4, gens("<(1 2)(3 4),(1 3)(2 4)>", 4))

    assert quotient(s4, v4).order == 6


def test_upper_fitting_length(s4, c2_wr_c3):
    assert fitting_length_upper(s4) == 3
    assert fitting_length_upper(c2_wr_c3) == 2
    assert fitting_length_upper(tiny("<(1 2 3)>")) == 1
    assert fitting_length_upper(closure([], 3)) == 0


@pytest.mark.parametrize(
    "text",
    ["<(1 2),(1 2 3 4)>", "<(1 2),(1 3 5)(2 4 6)>", "<(1 2 3),(1 2)(4 5)>", "<(1 2 3 4 5),(2 5)(3 4)>"],
)
def test_upper_series_matches_lower_series(text):
    g = PermGroup(parse_generator_list(text))

    assert fitting_length_upper(enumerate_group(g)) == fitting_length(g)


def test_find_hall_subgroup(s4):
    assert find_hall_subgroup(s4, {3}).order == 3
    assert find_hall_subgroup(s4, {2}).order == 8
    assert find_hall_subgroup(s4, {2, 3, 5}).order == 24
    assert find_hall_subgroup(s4, {5}).order == 1


def test_hall_search_fails_in_a5():
    a5 = tiny("<(1 2 3),(1 2 3 4 5)>")

    with pytest.raises(HallSearchError):
        find_hall_subgroup(a5, {3, 5})


def test_core_containment_lemma():
    g = enumerate_group(build(parse_expression("W(C(2,1),D(C(3,1),C(5,1)))")).group)

    assert g.order == 3840
    assert verify_core_containment(g, {2, 3}, 2, 3)
    assert verify_core_containment(g, {2, 5}, 5, 2)
    with pytest.raises(UsageError, match="distinct primes"):
        verify_core_containment(g, {2, 3}, 2, 2)


@pytest.mark.slow
def test_core_containment_for_every_sigma():
    g = enumerate_group(build(parse_expression("W(C(2,1),D(C(3,1),C(5,1)))")).group)
    checked = []

    for p, q in permutations(g.primes, 2):
        for extra in ((), tuple(set(g.primes) - {p, q})):
            sigma = {p, q, *extra}
            assert verify_core_containment(g, sigma, p, q), (sorted(sigma), p, q)
            checked.append((frozenset(sigma), p, q))

    assert len(set(checked)) == 12


def test_product_set_order(s4):
    v4 = subgroup(s4, gens("<(1 2)(3 4),(1 3)(2 4)>", 4))
    s3 = subgroup(s4, gens("<(1 2),(1 2 3)>", 4))

    assert product_set_order(v4, s3) == 24
    with pytest.raises(PairBudgetError, match="pair budget 100"):
        product_set_order(s4, s4, budget=100)


def test_subgroup_pairs(s4):
    pairs = subgroup_pairs(s4, 3)

    assert len(pairs) == 3


def test_trifactorization_holds(c2_wr_c3):
    report = check_trifactorization(
        c2_wr_c3,
        gens("<(1 2),(3 4),(5 6)>", 6),
        gens("<(1 3 5)(2 4 6)>", 6),
        list(c2_wr_c3.generators),
    )

    assert report.hypothesis_holds
    assert report.h_parts == {"H": 1, "K": 1, "L": 2}
    assert report.inequality_rhs == 2
    assert report.inequality_holds
    assert not report.kegel_applies


def test_nilpotent_trifactorization_is_nilpotent():
    c6 = tiny("<(1 2),(3 4 5)>")

    report = check_trifactorization(
        c6, gens("<(1 2)>", 5), gens("<(3 4 5)>", 5), gens("<(1 2)(3 4 5)>", 5)
    )

    assert report.hypothesis_holds
    assert report.kegel_applies
    assert report.kegel_holds


def test_trifactorization_hypothesis_unmet():
    s3 = tiny("<(1 2),(1 2 3)>")

    report = check_trifactorization(s3, gens("<(1 2 3)>", 3), gens("<(1 2)>", 3), gens("<(1 3)>", 3))

    assert not report.hypothesis_holds
    assert report.hypothesis_notes == ["|KL| = 4 != |G| = 6"]
    assert report.inequality_holds is None


def test_permutable_nilpotent_triple(c2_wr_c3):
    base = gens("<(1 2),(3 4),(5 6)>", 6)

    report = check_permutable_nilpotent(c2_wr_c3, base, gens("<(1 3 5)(2 4 6)>", 6), base)

    assert report.hypothesis_holds
    assert report.h_parts == {"N1N2": 2, "N2N3": 2, "N3N1": 1}
    assert report.inequality_rhs == 3
    assert report.inequality_holds


def test_non_permuting_triple():
    s3 = tiny("<(1 2),(1 2 3)>")

    report = check_permutable_nilpotent(s3, gens("<(1 2)>", 3), gens("<(1 3)>", 3), gens("<(2 3)>", 3))

    assert not report.hypothesis_holds
    assert "N1N2 != N2N1" in report.hypothesis_notes


def test_corrupted_system_fails_verification():
    g = build(parse_expression("W(C(2,1),W(C(3,1),C(5,1)))"))

    broken = corrupt_system(g)

    assert broken is not None
    assert not verify_sylow_system(broken).passed


def test_abelian_system_cannot_be_corrupted():
    assert corrupt_system(build(parse_expression("D(C(2,1),C(3,1))"))) is None
