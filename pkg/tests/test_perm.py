"""Test permutations and cycle notation."""

from random import Random

import pytest

from fitlen.errors import DegreeMismatchError, UsageError
from fitlen.perm import (
    Permutation,
    ProductReplacer,
    compose,
    format_permutation,
    parse_generator_list,
    parse_permutation,
)


def test_compose_applies_left_first():
    """(1 2) then (2 3) sends 1 -> 2 -> 3."""
    a = parse_permutation("(1 2)", 3)
    b = parse_permutation("(2 3)", 3)

    ab = compose(a, b)

    assert ab(0) == 2
    assert format_permutation(ab) == "(1 3 2)"
    assert ab == a * b


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_inverse_and_powers():
    g = parse_permutation("(1 2 3 4)(5 6)")

    assert (g * g.inverse()).is_identity()
    assert g.order() == 4
    assert (g**4).is_identity()
    assert g**-1 == g.inverse()
    assert g**0 == Permutation.identity(6)


def test_conjugate_and_commutator():
    x = parse_permutation("(1 2)", 3)
    g = parse_permutation("(1 2 3)", 3)

    # g^-1 x g relabels the points of x by g
    assert format_permutation(x.conjugate(g)) == "(2 3)"
    assert x.commutator(x).is_identity()
    assert x.commutator(g) == x.inverse() * g.inverse() * x * g


def test_support_and_first_moved_point():
    g = parse_permutation("(2 4)", 5)

    assert g.support() == (1, 3)
    assert g.first_moved_point() == 1
    assert Permutation.identity(5).first_moved_point() is None


def test_format_identity():
    assert format_permutation(Permutation.identity(4)) == "()"


def test_parse_with_commas_and_degree():
    g = parse_permutation("(1,3)(2, 4)", 6)

    assert g.degree == 6
    assert g.images == (2, 3, 0, 1, 4, 5)


def test_parse_rejects_bad_text():
    with pytest.raises(UsageError, match="could not parse"):
        parse_permutation("(1 2")
    with pytest.raises(UsageError, match="1-based"):
        parse_permutation("(0 1)")
    with pytest.raises(UsageError, match="beyond degree"):
        parse_permutation("(1 5)", 3)


def test_constructor_rejects_non_bijection():
    with pytest.raises(UsageError, match="not a permutation"):
        Permutation([0, 0, 1])


def test_parse_generator_list_common_degree():
    gens = parse_generator_list("<(1 2),(1 2 3 4)>")

    assert len(gens) == 2
    assert {g.degree for g in gens} == {4}
    assert parse_generator_list("<>") == []


def test_hash_and_equality():
    a = parse_permutation("(1 2 3)")
    b = parse_permutation("(2 3 1)")

    assert a == b
    assert len({a, b}) == 1
    assert a.key() == b.key()


def test_product_replacer_stays_in_group():
    """Samples from <(1 2 3)> never leave the cyclic group."""
    g = parse_permutation("(1 2 3)", 4)
    allowed = {Permutation.identity(4), g, g * g}
    replacer = ProductReplacer(4, Random(7))
    replacer.add_generator(g)

    samples = [replacer.sample() for _ in range(50)]

    assert all(s in allowed for s in samples)


def test_product_replacer_is_seeded():
    gens = parse_generator_list("<(1 2),(1 2 3 4 5)>")

    def run(seed):
        replacer = ProductReplacer(5, Random(seed))
        for g in gens:
            replacer.add_generator(g)
        return [replacer.sample().key() for _ in range(10)]

    assert run(3) == run(3)
