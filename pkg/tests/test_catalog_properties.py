"""Property sweeps over the test-group catalog.

Every group is built, its Sylow system verified and all bounds checked.
Tiny groups are also compared against the brute-force oracle.
"""

from itertools import combinations, combinations_with_replacement, permutations
from pathlib import Path

import pytest

from fitlen.bounds import check_all
from fitlen.catalog import CatalogLoader
from fitlen.construct import build
from fitlen.dsl import parse_expression
from fitlen.group import prime_part
from fitlen.hall import (
    PrimeSet,
    all_subsets,
    hall_fitting_length,
    hall_profile,
    hall_subgroup,
    max_hall_length,
)
from fitlen.oracle import (
    check_trifactorization,
    core_sigma,
    enumerate_group,
    find_hall_subgroup,
    fitting_length_upper,
    fitting_subgroup,
    is_nilpotent_tiny,
    verify_core_containment,
)
from fitlen.series import derived_length, derived_series, fitting_length, lower_nilpotent_series

CATALOG = CatalogLoader(Path(__file__).parent / "fixtures" / "catalog.yaml")
GROUPS = CATALOG.groups()


def _params(groups):
    return [
        pytest.param(g, id=g.name, marks=() if g.tiny else pytest.mark.slow) for g in groups
    ]


ALL = _params(GROUPS)
TINY = _params(CATALOG.groups(tiny=True))


@pytest.mark.parametrize("entry", ALL)
def test_build_and_sylow_system(entry):
    expr = parse_expression(entry.expression)

    g = build(expr)

    assert g.order == expr.order()
    assert g.weight == entry.weight
    assert g.system_verified
    for sigma in all_subsets(g.primes):
        assert hall_subgroup(g, sigma).order == prime_part(g.order, sigma)


@pytest.mark.parametrize("entry", ALL)
def test_bounds_hold(entry):
    report = check_all(build(parse_expression(entry.expression)), include_cjs=entry.tiny, sweep=True)

    assert report.passed, report.violations


@pytest.mark.parametrize("entry", TINY)
def test_fitting_length_matches_oracle(entry):
    g = build(parse_expression(entry.expression))
    tiny = enumerate_group(g.group)

    assert fitting_length(g.group) == fitting_length_upper(tiny)


@pytest.mark.parametrize("entry", TINY)
def test_hall_lengths_match_oracle(entry):
    g = build(parse_expression(entry.expression))
    tiny = enumerate_group(g.group)

    for sigma in all_subsets(g.primes):
        if not sigma:
            continue
        found = find_hall_subgroup(tiny, sigma)
        assert hall_fitting_length(g, sigma) == fitting_length_upper(found), sigma.text()


@pytest.mark.parametrize("entry", TINY)
def test_fitting_subgroup_is_product_of_cores(entry):
    tiny = enumerate_group(build(parse_expression(entry.expression)).group)

    product = 1
    for p in tiny.primes:
        product *= core_sigma(tiny, {p}).order

    assert fitting_subgroup(tiny).order == product


@pytest.mark.parametrize("entry", [p for p in TINY if p.values[0].weight >= 2])
def test_core_containment(entry):
    tiny = enumerate_group(build(parse_expression(entry.expression)).group)
    checked = 0

    for sigma in all_subsets(tiny.primes):
        for p, q in permutations(sorted(sigma), 2):
            assert verify_core_containment(tiny, sigma, p, q), (sigma.text(), p, q)
            checked += 1

    assert checked >= 2


@pytest.mark.parametrize("entry", ALL)
def test_hall_profile_is_monotone(entry):
    g = build(parse_expression(entry.expression))
    subsets = [s for s in all_subsets(g.primes) if s]

    profile = hall_profile(g, subsets)

    for small in subsets:
        for big in subsets:
            if small < big:
                assert profile[small] <= profile[big], (small.text(), big.text())
    lengths = [max_hall_length(g, k) for k in range(g.weight + 1)]
    assert lengths == sorted(lengths)
    assert lengths[-1] == fitting_length(g.group)


@pytest.mark.parametrize("entry", ALL)
def test_complementary_hall_orders(entry):
    g = build(parse_expression(entry.expression))

    for sigma in all_subsets(g.primes):
        rest = PrimeSet(set(g.primes) - sigma)
        assert hall_subgroup(g, sigma).order * hall_subgroup(g, rest).order == g.order


def _complement_triples(g):
    """Triples of Hall complements (or G itself) whose pairwise products are G."""
    pi = PrimeSet(g.primes)
    candidates = [PrimeSet(pi - {p}) for p in g.primes] + [pi]
    for triple in combinations_with_replacement(candidates, 3):
        if any(a == b != pi for a, b in combinations(triple, 2)):
            continue
        yield triple


@pytest.mark.parametrize("entry", TINY)
def test_complement_trifactorizations(entry):
    g = build(parse_expression(entry.expression))
    tiny = enumerate_group(g.group)

    reports = [
        check_trifactorization(tiny, *(hall_subgroup(g, s).generators for s in triple))
        for triple in _complement_triples(g)
    ]

    assert reports
    for report in reports:
        assert report.hypothesis_holds, report.hypothesis_notes
        if report.kegel_applies:
            assert report.kegel_holds


def test_nilpotent_trifactorizations_are_nilpotent():
    applied = 0

    for entry in CATALOG.groups(tiny=True):
        g = build(parse_expression(entry.expression))
        tiny = enumerate_group(g.group)
        if not is_nilpotent_tiny(tiny):
            continue
        for triple in _complement_triples(g):
            report = check_trifactorization(tiny, *(hall_subgroup(g, s).generators for s in triple))
            assert report.kegel_applies
            assert report.kegel_holds
            applied += 1

    assert applied >= 20


def test_non_nilpotent_trifactorizations_are_reported():
    reported = 0

    for entry in CATALOG.groups(tiny=True):
        g = build(parse_expression(entry.expression))
        tiny = enumerate_group(g.group)
        if is_nilpotent_tiny(tiny):
            continue
        for triple in _complement_triples(g):
            report = check_trifactorization(tiny, *(hall_subgroup(g, s).generators for s in triple))
            assert report.inequality_holds is not False
            if report.inequality_holds is not None:
                reported += 1

    assert reported >= 10


@pytest.mark.parametrize("entry", ALL)
def test_fitting_length_at_most_derived_length(entry):
    group = build(parse_expression(entry.expression)).group

    assert fitting_length(group) <= derived_length(group)


@pytest.mark.parametrize("entry", ALL)
def test_series_and_hall_orders_divide(entry):
    g = build(parse_expression(entry.expression))

    for series in (derived_series(g.group), lower_nilpotent_series(g.group)):
        orders = series.orders
        assert orders[0] == g.order
        for big, small in zip(orders, orders[1:]):
            assert big % small == 0 and big > small
    for sigma in all_subsets(g.primes):
        assert g.order % hall_subgroup(g, sigma).order == 0


DIRECT_FACTORS = [
    "C(2,1)",
    "D(C(2,1),C(3,1))",
    "W(C(2,1),C(3,1))",
    "W(C(3,1),C(2,1))",
    "W(W(C(2,1),C(3,1)),C(2,1))",
]


@pytest.mark.parametrize("left, right", list(combinations_with_replacement(DIRECT_FACTORS, 2)))
def test_fitting_length_of_direct_product(left, right):
    a = fitting_length(build(parse_expression(left)).group)
    b = fitting_length(build(parse_expression(right)).group)

    product = build(parse_expression(f"D({left},{right})"))

    assert fitting_length(product.group) == max(a, b)
