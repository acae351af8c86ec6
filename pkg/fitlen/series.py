"""Subgroup series, derived length and Fitting length.

Everything here works inside the ambient permutation group; no quotient
groups are formed. The Fitting length is read off the lower nilpotent
series G > gamma(G) > gamma(gamma(G)) > ... of nilpotent residuals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from random import Random
from typing import Literal, Optional, Sequence

from .chain import ChainBuilder
from .config import get_config
from .errors import ContainmentError, NotSolubleError
from .group import PermGroup, prime_divisors
from .perm import Permutation, format_permutation

logger = logging.getLogger(__name__)

SeriesKind = Literal["derived", "lower_central", "lower_nilpotent"]


@dataclass(frozen=True)
class SubgroupSeries:
    """A descending series; ``terms[0]`` is the input group.

    Terms stop at the first repeat, so consecutive orders strictly decrease.
    """

    kind: SeriesKind
    terms: tuple[PermGroup, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(t.order for t in self.terms)

    @property
    def last(self) -> PermGroup:
        return self.terms[-1]


def is_abelian(group: PermGroup) -> bool:
    gens = group.generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])


def is_prime_power(n: int, largest: int) -> bool:
    return n > 1 and len(prime_divisors(n, largest)) == 1


def _closure_under_conjugation(
    group: PermGroup, elements: Sequence[Permutation]
) -> PermGroup:
    """Normal closure of ``elements`` in ``group``; membership is not checked.

    Random conjugates are sifted against a chain kept close to complete by a
    random phase after every addition. At most ``stationary_rounds * degree``
    random additions are made before the deterministic pass, which closes
    the set of input generators under conjugation by ``group.generators``.
    """
    config = get_config()
    builder = ChainBuilder(group.degree, seed=config.seed, stationary_rounds=config.stationary_rounds)
    for s in elements:
        builder.add_generator(s)
    if not builder.inputs:
        return PermGroup.trivial(group.degree)
    builder.random_phase(group.order)

    rng = Random(config.seed)
    budget = config.stationary_rounds * group.degree
    stationary = 0
    while stationary < config.stationary_rounds and budget > 0:
        if builder.order() == group.order:
            break
        c = builder.replacer.sample().conjugate(group.random_element(rng))
        residue, level = builder.sift(c)
        if level == len(builder.base) and residue.is_identity():
            stationary += 1
            continue
        builder.add_generator(c)
        builder.random_phase(group.order)
        budget -= 1
        stationary = 0
    if budget == 0:
        logger.debug(f"Normal closure: random additions exhausted at order {builder.order()}")

    builder.complete()
    changed = True
    while changed:
        changed = False
        for n in list(builder.inputs):
            for g in group.generators:
                c = n.conjugate(g)
                if not builder.contains(c):
                    logger.debug("Normal closure missed a conjugate; extending and re-verifying")
                    builder.add_generator(c)
                    builder.complete()
                    changed = True
    return PermGroup(builder.inputs, degree=group.degree, chain=builder.freeze())


def normal_closure(group: PermGroup, elements: Sequence[Permutation]) -> PermGroup:
    """Smallest normal subgroup of ``group`` containing ``elements``.

    Raises:
        ContainmentError: If an element lies outside the group
    """
    for s in elements:
        if not group.contains(s):
            raise ContainmentError("element is not in the group", format_permutation(s))
    return _closure_under_conjugation(group, elements)


def _join(h: PermGroup, k: PermGroup) -> PermGroup:
    if h.is_subgroup_of(k):
        return k
    if k.is_subgroup_of(h):
        return h
    return PermGroup(list(h.generators) + list(k.generators), degree=h.degree)


def commutator_subgroup(h: PermGroup, k: PermGroup, ambient: PermGroup) -> PermGroup:
    """[H, K]: normal closure in <H, K> of the commutators of generator pairs.

    Raises:
        ContainmentError: If H or K is not inside ``ambient``
    """
    for part in (h, k):
        for g in part.generators:
            if not ambient.contains(g):
                raise ContainmentError("generator is not in the ambient group", format_permutation(g))
    commutators = [a.commutator(b) for a in h.generators for b in k.generators]
    commutators = [c for c in commutators if not c.is_identity()]
    if not commutators:
        return PermGroup.trivial(ambient.degree)
    return _closure_under_conjugation(_join(h, k), commutators)


def derived_series(group: PermGroup) -> SubgroupSeries:
    """G = D0 > D1 > ... with D(i+1) = [Di, Di].

    Raises:
        NotSolubleError: If the series stalls above the trivial group
    """
    limit = get_config().series_step_limit
    terms = [group]
    current = group
    while current.order > 1:
        if len(terms) > limit:
            raise NotSolubleError(f"derived series exceeded {limit} steps")
        nxt = (
            PermGroup.trivial(group.degree)
            if is_abelian(current)
            else commutator_subgroup(current, current, current)
        )
        if nxt.order == current.order:
            raise NotSolubleError(
                f"derived series stalls at order {current.order}; the group is not soluble"
            )
        terms.append(nxt)
        current = nxt
    return SubgroupSeries("derived", tuple(terms))


def derived_length(group: PermGroup) -> int:
    """d(G): 0 for the trivial group, 1 for a nontrivial abelian group."""
    return derived_series(group).length


def lower_central_series(group: PermGroup) -> SubgroupSeries:
    """L1 = H, L(k+1) = [Lk, H], up to the first repeated term."""
    terms = [group]
    current = group
    while current.order > 1:
        nxt = commutator_subgroup(current, group, group)
        if nxt.order == current.order:
            break
        terms.append(nxt)
        current = nxt
    return SubgroupSeries("lower_central", tuple(terms))


def nilpotent_residual(group: PermGroup) -> PermGroup:
    """Stabilizing term of the lower central series; trivial iff nilpotent."""
    if group.order == 1 or is_prime_power(group.order, group.degree) or is_abelian(group):
        return PermGroup.trivial(group.degree)
    return lower_central_series(group).last


def is_nilpotent(group: PermGroup) -> bool:
    return nilpotent_residual(group).order == 1


def lower_nilpotent_series(group: PermGroup) -> SubgroupSeries:
    """N0 = G, N(i+1) = nilpotent residual of Ni, down to the trivial group.

    Raises:
        NotSolubleError: If a residual equals its predecessor above the
            trivial group, or the step ceiling is reached
    """
    limit = get_config().series_step_limit
    terms = [group]
    current = group
    while current.order > 1:
        if len(terms) > limit:
            raise NotSolubleError(f"lower nilpotent series exceeded {limit} steps")
        nxt = nilpotent_residual(current)
        if nxt.order == current.order:
            raise NotSolubleError(
                f"nilpotent residual of a group of order {current.order} is the group "
                f"itself; the group is not soluble"
            )
        logger.debug(f"Lower nilpotent series: order {current.order} -> {nxt.order}")
        terms.append(nxt)
        current = nxt
    return SubgroupSeries("lower_nilpotent", tuple(terms))


def fitting_length(group: PermGroup, label: Optional[str] = None) -> int:
    """h(G): 0 for the trivial group, 1 iff G is nontrivial nilpotent."""
    h = lower_nilpotent_series(group).length
    if label:
        logger.info(f"Fitting length of {label}: {h}")
    return h
