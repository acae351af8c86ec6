"""Brute-force ground truth on small groups.

Groups here are fully enumerated element sets. Everything is exhaustive and
meant for orders up to the configured oracle cap; the results serve as
reference values for the chain-based algorithms and drive the
factorization harness.
"""

from __future__ import annotations

import logging
from collections import deque
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .chain import build_chain
from .config import get_config
from .construct import ConstructedGroup
from .errors import (
    ContainmentError,
    HallSearchError,
    NotSolubleError,
    OracleScaleError,
    PairBudgetError,
    UsageError,
)
from .group import PermGroup, prime_divisors, prime_part
from .models import ConjectureReport
from .perm import Permutation, format_permutation

logger = logging.getLogger(__name__)


class TinyGroup:
    """An enumerated permutation group; immutable once built."""

    def __init__(self, elements: Sequence[Permutation], generators: Sequence[Permutation], degree: int):
        self.degree = degree
        self.elements: tuple[Permutation, ...] = tuple(elements)
        self.generators: tuple[Permutation, ...] = tuple(g for g in generators if not g.is_identity())
        self.index: dict[bytes, int] = {e.key(): i for i, e in enumerate(self.elements)}
        self._classes: Optional[list[list[Permutation]]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def primes(self) -> tuple[int, ...]:
        return prime_divisors(self.order, max(self.degree, 2)) if self.order > 1 else ()

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        return g.key() in self.index

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def keys(self) -> frozenset[bytes]:
        return frozenset(self.index)

    def is_subgroup_of(self, other: TinyGroup) -> bool:
        return all(other.contains(e) for e in self.elements)

    def is_normal_in(self, other: TinyGroup) -> bool:
        return all(self.contains(n.conjugate(g)) for n in self.generators for g in other.generators)

    def conjugacy_classes(self) -> list[list[Permutation]]:
        """Classes as orbits under conjugation by the generators."""
        if self._classes is None:
            seen: set[bytes] = set()
            classes = []
            for x in self.elements:
                if x.key() in seen:
                    continue
                seen.add(x.key())
                cls = [x]
                queue = deque([x])
                while queue:
                    y = queue.popleft()
                    for g in self.generators:
                        z = y.conjugate(g)
                        if z.key() not in seen:
                            seen.add(z.key())
                            cls.append(z)
                            queue.append(z)
                classes.append(cls)
            self._classes = classes
        return self._classes

    def __repr__(self) -> str:
        return f"TinyGroup(order={self.order}, degree={self.degree})"


def closure(
    generators: Iterable[Permutation], degree: int, cap: Optional[int] = None
) -> Optional[TinyGroup]:
    """Breadth-first closure of ``generators``.

    Returns:
        The enumerated group, or None once more than ``cap`` elements appear
    """
    gens = [g for g in generators if not g.is_identity()]
    identity = Permutation.identity(degree)
    seen = {identity.key()}
    elements = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y.key() not in seen:
                seen.add(y.key())
                elements.append(y)
                if cap is not None and len(elements) > cap:
                    return None
                queue.append(y)
    return TinyGroup(elements, gens, degree)


def enumerate_group(group: PermGroup, cap: Optional[int] = None) -> TinyGroup:
    """All elements of a permutation group.

    Raises:
        OracleScaleError: If the order exceeds the cap (default: configured)
    """
    cap = cap if cap is not None else get_config().oracle_cap
    if group.order > cap:
        raise OracleScaleError(
            f"oracle scale exceeded: group order {group.order} is above the cap {cap}"
        )
    result = closure(group.generators, group.degree)
    assert result is not None
    return result


def subgroup(ambient: TinyGroup, generators: Iterable[Permutation]) -> TinyGroup:
    """Enumerated subgroup of ``ambient``.

    Raises:
        ContainmentError: If a generator lies outside ``ambient``
    """
    gens = list(generators)
    for g in gens:
        if not ambient.contains(g):
            raise ContainmentError("generator is not in the group", format_permutation(g))
    result = closure(gens, ambient.degree)
    assert result is not None
    return result


def _trivial(degree: int) -> TinyGroup:
    return TinyGroup([Permutation.identity(degree)], [], degree)


def _is_sigma_order(n: int, sigma: frozenset[int]) -> bool:
    return prime_part(n, sigma) == n


def core_sigma(group: TinyGroup, sigma: Iterable[int]) -> TinyGroup:
    """Largest normal sigma-subgroup.

    It is generated by the conjugacy classes whose generated (normal)
    subgroup is a sigma-group.
    """
    sigma = frozenset(sigma)
    gens: list[Permutation] = []
    current = _trivial(group.degree)
    for cls in group.conjugacy_classes():
        x = cls[0]
        if x.is_identity() or current.contains(x) or not _is_sigma_order(x.order(), sigma):
            continue
        normal = closure(cls, group.degree)
        assert normal is not None
        if _is_sigma_order(normal.order, sigma):
            gens.extend(normal.generators)
            current = closure(gens, group.degree)
            assert current is not None
    return current


def fitting_subgroup(group: TinyGroup) -> TinyGroup:
    """F(G), the join of the p-cores."""
    gens: list[Permutation] = []
    for p in group.primes:
        gens.extend(core_sigma(group, {p}).generators)
    result = closure(gens, group.degree)
    assert result is not None
    return result


def is_nilpotent_tiny(group: TinyGroup) -> bool:
    return fitting_subgroup(group).order == group.order


def quotient(group: TinyGroup, normal: TinyGroup) -> TinyGroup:
    """G/N realized by the action of G on the right cosets of N."""
    coset_of: dict[bytes, int] = {}
    representatives: list[Permutation] = []
    for x in group.elements:
        if x.key() in coset_of:
            continue
        label = len(representatives)
        representatives.append(x)
        for n in normal.elements:
            coset_of[(n * x).key()] = label
    index = len(representatives)
    images = []
    for g in group.generators:
        images.append(Permutation([coset_of[(r * g).key()] for r in representatives]))
    result = closure(images, index)
    assert result is not None
    return result


def fitting_length_upper(group: TinyGroup) -> int:
    """Length of the upper Fitting series, by repeated quotients by F.

    Raises:
        NotSolubleError: If a nontrivial quotient has trivial Fitting subgroup
    """
    length = 0
    current = group
    while current.order > 1:
        fit = fitting_subgroup(current)
        if fit.order == 1:
            raise NotSolubleError(
                f"a section of order {current.order} has trivial Fitting subgroup; "
                f"the group is not soluble"
            )
        current = quotient(current, fit)
        length += 1
    return length


def find_hall_subgroup(group: TinyGroup, sigma: Iterable[int]) -> TinyGroup:
    """A Hall sigma-subgroup found by search.

    Sylow subgroups are grown greedily; each further prime is added by
    trying the conjugates of one of its Sylow subgroups.

    Raises:
        HallSearchError: If no Hall subgroup is found (the group is then not soluble)
    """
    sigma = frozenset(sigma) & frozenset(group.primes)
    if not sigma:
        return _trivial(group.degree)
    target = prime_part(group.order, sigma)
    primes = sorted(sigma)
    hall = _sylow(group, primes[0])
    for q in primes[1:]:
        sylow_q = _sylow(group, q)
        wanted = hall.order * sylow_q.order
        found = None
        tried: set[frozenset[bytes]] = set()
        for g in group.elements:
            conj = [s.conjugate(g) for s in sylow_q.generators]
            key = frozenset(c.key() for c in conj)
            if key in tried:
                continue
            tried.add(key)
            candidate = closure(list(hall.generators) + conj, group.degree, cap=wanted)
            if candidate is not None and candidate.order == wanted:
                found = candidate
                break
        if found is None:
            raise HallSearchError(f"no Hall subgroup for primes {sorted(sigma)} found")
        hall = found
    if hall.order != target:
        raise HallSearchError(f"Hall search ended at order {hall.order}, expected {target}")
    return hall


def _sylow(group: TinyGroup, p: int) -> TinyGroup:
    current = _trivial(group.degree)
    target = prime_part(group.order, [p])
    for x in group.elements:
        if current.order == target:
            break
        if current.contains(x) or not _is_sigma_order(x.order(), frozenset({p})):
            continue
        candidate = closure(list(current.generators) + [x], group.degree, cap=target)
        if candidate is not None and _is_sigma_order(candidate.order, frozenset({p})):
            current = candidate
    return current


def verify_core_containment(group: TinyGroup, sigma: Iterable[int], p: int, q: int) -> bool:
    """O_p(H) <= O_q'(G) for a Hall sigma-subgroup H, p != q in sigma.

    Raises:
        UsageError: If p == q or either prime is outside sigma
    """
    sigma = frozenset(sigma)
    if p == q or p not in sigma or q not in sigma:
        raise UsageError("needs distinct primes p, q inside sigma")
    hall = find_hall_subgroup(group, sigma)
    core_p = core_sigma(hall, {p})
    q_prime = frozenset(group.primes) - {q}
    core_q_prime = core_sigma(group, q_prime)
    return core_p.is_subgroup_of(core_q_prime)


def product_set_order(
    h: Sequence[Permutation] | TinyGroup,
    k: Sequence[Permutation] | TinyGroup,
    budget: Optional[int] = None,
) -> int:
    """|{xy : x in H, y in K}| by hashed enumeration.

    Raises:
        PairBudgetError: If |H| * |K| exceeds the budget
    """
    left = h.elements if isinstance(h, TinyGroup) else tuple(h)
    right = k.elements if isinstance(k, TinyGroup) else tuple(k)
    budget = budget if budget is not None else get_config().pair_budget
    if len(left) * len(right) > budget:
        raise PairBudgetError(
            f"product set of sizes {len(left)} x {len(right)} exceeds the pair budget {budget}"
        )
    return len({(x * y).key() for x in left for y in right})


def _product_keys(h: TinyGroup, k: TinyGroup, budget: int) -> set[bytes]:
    if h.order * k.order > budget:
        raise PairBudgetError(
            f"product set of sizes {h.order} x {k.order} exceeds the pair budget {budget}"
        )
    return {(x * y).key() for x in h.elements for y in k.elements}


def check_trifactorization(
    group: TinyGroup,
    h: Sequence[Permutation],
    k: Sequence[Permutation],
    l: Sequence[Permutation],
    label: str = "G",
) -> ConjectureReport:
    """Record whether G = HK = KL = LH and how h(G) compares with h(H)+h(K)+h(L)-2.

    When H, K and L are nilpotent and the factorizations hold, G is checked
    to be nilpotent (Kegel's theorem).
    """
    parts = {"H": subgroup(group, h), "K": subgroup(group, k), "L": subgroup(group, l)}
    notes = []
    holds = True
    for a, b in (("H", "K"), ("K", "L"), ("L", "H")):
        size = product_set_order(parts[a], parts[b])
        if size != group.order:
            holds = False
            notes.append(f"|{a}{b}| = {size} != |G| = {group.order}")
    h_group = fitting_length_upper(group)
    h_parts = {name: fitting_length_upper(part) for name, part in parts.items()}
    rhs = sum(h_parts.values()) - 2
    report = ConjectureReport(
        kind="trifactorized",
        group=label,
        group_order=group.order,
        hypothesis_holds=holds,
        hypothesis_notes=notes,
        h_group=h_group,
        h_parts=h_parts,
        inequality_rhs=rhs,
        inequality_holds=(h_group <= rhs) if holds else None,
    )
    if holds and all(v <= 1 for v in h_parts.values()):
        report.kegel_applies = True
        report.kegel_holds = h_group <= 1
        if not report.kegel_holds:
            logger.error(f"{label}: nilpotent trifactorization of a non-nilpotent group")
    logger.info(
        f"Trifactorization check on {label}: hypothesis {'holds' if holds else 'unmet'}, "
        f"h(G) = {h_group}, rhs = {rhs}"
    )
    return report


def check_permutable_nilpotent(
    group: TinyGroup,
    n1: Sequence[Permutation],
    n2: Sequence[Permutation],
    n3: Sequence[Permutation],
    label: str = "G",
) -> ConjectureReport:
    """Record whether G = N1N2N3 with pairwise permutable nilpotent N_i, and
    how h(G) compares with h(N1N2)+h(N2N3)+h(N3N1)-2."""
    budget = get_config().pair_budget
    parts = {"N1": subgroup(group, n1), "N2": subgroup(group, n2), "N3": subgroup(group, n3)}
    notes = []
    holds = True
    for name, part in parts.items():
        if not is_nilpotent_tiny(part):
            holds = False
            notes.append(f"{name} is not nilpotent")
    products: dict[str, TinyGroup] = {}
    for a, b in (("N1", "N2"), ("N2", "N3"), ("N3", "N1")):
        ab = _product_keys(parts[a], parts[b], budget)
        ba = _product_keys(parts[b], parts[a], budget)
        if ab != ba:
            holds = False
            notes.append(f"{a}{b} != {b}{a}")
        joined = subgroup(group, list(parts[a].generators) + list(parts[b].generators))
        products[a + b] = joined
    n12 = [group.elements[group.index[key]] for key in _product_keys(parts["N1"], parts["N2"], budget)]
    if len(n12) * parts["N3"].order > budget:
        raise PairBudgetError(
            f"product set of sizes {len(n12)} x {parts['N3'].order} exceeds the pair budget {budget}"
        )
    triple = {(x * y).key() for x in n12 for y in parts["N3"].elements}
    if len(triple) != group.order:
        holds = False
        notes.append(f"|N1N2N3| = {len(triple)} != |G| = {group.order}")
    h_group = fitting_length_upper(group)
    h_parts = {name: fitting_length_upper(part) for name, part in products.items()}
    rhs = sum(h_parts.values()) - 2
    logger.info(
        f"Permutable nilpotent triple on {label}: hypothesis {'holds' if holds else 'unmet'}, "
        f"h(G) = {h_group}, rhs = {rhs}"
    )
    return ConjectureReport(
        kind="permutable-nilpotent",
        group=label,
        group_order=group.order,
        hypothesis_holds=holds,
        hypothesis_notes=notes,
        h_group=h_group,
        h_parts=h_parts,
        inequality_rhs=rhs,
        inequality_holds=(h_group <= rhs) if holds else None,
    )


def find_nonpermuting_conjugate(
    group: ConstructedGroup,
) -> Optional[tuple[int, int, Permutation]]:
    """Search for a conjugate G_p^v of a Sylow member that does not permute with G_q.

    Candidate conjugators v are the group generators and the members of the
    Sylow system, in a fixed order.

    Returns:
        (p, q, v), or None when every candidate conjugate still permutes
    """
    config = get_config()
    candidates: list[Permutation] = list(group.group.generators)
    for p in group.system.primes:
        candidates.extend(group.system.for_prime(p))
    for p in group.primes:
        for q in group.primes:
            if p == q:
                continue
            expected = prime_part(group.order, [p, q])
            for v in candidates:
                conjugated = [g.conjugate(v) for g in group.system.for_prime(p)]
                chain = build_chain(
                    conjugated + list(group.system.for_prime(q)),
                    degree=group.degree,
                    seed=config.seed,
                    stationary_rounds=config.stationary_rounds,
                )
                if chain.order != expected:
                    logger.info(
                        f"G_{p} conjugated by {format_permutation(v)} does not permute with G_{q}"
                    )
                    return p, q, v
    return None


def corrupt_system(group: ConstructedGroup) -> Optional[ConstructedGroup]:
    """Copy of ``group`` whose Sylow system has one member replaced by a bad conjugate."""
    found = find_nonpermuting_conjugate(group)
    if found is None:
        return None
    p, _, v = found
    return group.with_system(
        group.system.replace(p, [g.conjugate(v) for g in group.system.for_prime(p)])
    )


def subgroup_pairs(group: TinyGroup, limit: int) -> list[tuple[TinyGroup, TinyGroup]]:
    """Cyclic subgroup pairs <x>, <y> over the first elements, for product-formula checks."""
    cyclics: list[TinyGroup] = []
    seen: set[frozenset[bytes]] = set()
    for x in group.elements:
        c = closure([x], group.degree)
        assert c is not None
        if c.keys() not in seen:
            seen.add(c.keys())
            cyclics.append(c)
        if len(cyclics) >= limit:
            break
    return list(combinations(cyclics, 2))
