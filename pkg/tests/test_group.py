"""Test permutation groups."""

from random import Random

import pytest

from fitlen.errors import ContainmentError, DegreeMismatchError, OracleScaleError
from fitlen.group import PermGroup, enumerate_elements, prime_divisors, prime_part
from fitlen.perm import Permutation, parse_generator_list, parse_permutation


@pytest.fixture
def s4():
    return PermGroup(parse_generator_list("<(1 2),(1 2 3 4)>"))


def test_prime_helpers():
    assert prime_divisors(360, 10) == (2, 3, 5)
    assert prime_divisors(1, 5) == ()
    assert prime_part(360, [2, 5]) == 40
    assert prime_part(360, []) == 1


def test_prime_divisors_rejects_large_factor():
    with pytest.raises(ValueError, match="prime factor above"):
        prime_divisors(22, 7)


def test_order_primes_weight(s4):
    assert s4.order == 24
    assert s4.primes == (2, 3)
    assert s4.weight == 2
    assert not s4.is_trivial()


def test_trivial_group():
    trivial = PermGroup.trivial(5)

    assert trivial.order == 1
    assert trivial.primes == ()
    assert trivial.is_trivial()


def test_contains(s4):
    assert parse_permutation("(1 3)", 4) in s4
    assert s4.contains(Permutation.identity(4))
    with pytest.raises(DegreeMismatchError):
        s4.contains(Permutation.identity(6))


def test_subgroup(s4):
    v4 = s4.subgroup(parse_generator_list("<(1 2)(3 4),(1 3)(2 4)>"))

    assert v4.order == 4
    assert v4.is_subgroup_of(s4)
    assert not s4.is_subgroup_of(v4)


def test_subgroup_rejects_outsider():
    c3 = PermGroup([parse_permutation("(1 2 3)", 4)])

    with pytest.raises(ContainmentError, match=r"\(1 2\)"):
        c3.subgroup([parse_permutation("(1 2)", 4)])


def test_random_element_in_group(s4):
    rng = Random(1)

    assert all(s4.contains(s4.random_element(rng)) for _ in range(20))


def test_enumerate_elements(s4):
    elements = enumerate_elements(s4, cap=100)

    assert len(elements) == 24
    assert len(set(elements)) == 24
    assert elements[0].is_identity()


def test_enumerate_elements_cap(s4):
    with pytest.raises(OracleScaleError, match="above the cap 10"):
        enumerate_elements(s4, cap=10)


def test_products_of_generators_are_members():
    gens = parse_generator_list("<(1 2)(3 4),(1 3 5)(2 4 6)>", degree=8)
    g = PermGroup(gens)
    rng = Random(7)

    for _ in range(100):
        word = Permutation.identity(8)
        for _ in range(rng.randint(1, 12)):
            word = word * rng.choice(gens)
        assert g.contains(word)

    assert not g.contains(parse_permutation("(7 8)", 8))
    assert not g.contains(parse_permutation("(1 7)", 8))


@pytest.mark.parametrize("text", ["<(1 2),(1 2 3 4)>", "<(1 2),(1 3 5)(2 4 6)>", "<(1 2 3 4 5),(1 2)>"])
def test_subgroup_orders_divide_group_order(text):
    g = PermGroup(parse_generator_list(text))
    rng = Random(3)

    for _ in range(20):
        h = g.subgroup([g.random_element(rng) for _ in range(rng.randint(1, 2))])
        assert g.order % h.order == 0
        assert h.is_subgroup_of(g)
