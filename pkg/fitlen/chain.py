"""Stabilizer chains built with a seeded Schreier-Sims algorithm.

The builder runs a randomized phase (product replacement, fixed seed) and
then either stops at a proven order bound or completes deterministically by
sifting every Schreier generator. The resulting chain is exact either way.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from random import Random
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DegreeMismatchError, UsageError
from .perm import Permutation, ProductReplacer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainLevel:
    """One level of a stabilizer chain.

    ``transversal[x]`` maps the base point to ``x``; ``generators`` are the
    strong generators fixing every earlier base point.
    """

    point: int
    generators: tuple[Permutation, ...]
    transversal: Mapping[int, Permutation]
    inverses: Mapping[int, Permutation] = field(repr=False)

    @property
    def orbit(self) -> tuple[int, ...]:
        return tuple(self.transversal)

    @property
    def orbit_size(self) -> int:
        return len(self.transversal)


@dataclass(frozen=True)
class StabilizerChain:
    """Verified base and strong generating set."""

    degree: int
    base: tuple[int, ...]
    levels: tuple[ChainLevel, ...]

    @property
    def order(self) -> int:
        return math.prod(level.orbit_size for level in self.levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        return self.levels[0].generators if self.levels else ()

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip g through the chain from level ``start``.

        Returns:
            The residue and the level where sifting stopped
            (``len(levels)`` when it passed every level)
        """
        if g.degree != self.degree:
            raise DegreeMismatchError(
                f"permutation of degree {g.degree} sifted in a chain of degree {self.degree}"
            )
        for k in range(start, len(self.levels)):
            level = self.levels[k]
            image = int(g.array[level.point])
            if image == level.point:
                continue
            inv = level.inverses.get(image)
            if inv is None:
                return g, k
            g = g * inv
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        residue, level = self.sift(g)
        return level == len(self.levels) and residue.is_identity()

    def random_element(self, rng: Random) -> Permutation:
        """Uniformly random element: one transversal element per level."""
        g = Permutation.identity(self.degree)
        for level in reversed(self.levels):
            g = g * level.transversal[rng.choice(level.orbit)]
        return g


class ChainBuilder:
    """Incremental Schreier-Sims.

    Input generators are kept as strong generators themselves, so level 0
    can be verified with the input generators alone.
    """

    def __init__(self, degree: int, seed: int = 0, stationary_rounds: int = 20):
        if degree < 1:
            raise UsageError("degree must be >= 1")
        self.degree = degree
        self.stationary_rounds = stationary_rounds
        self.rng = Random(seed)
        self.replacer = ProductReplacer(degree, self.rng)
        self.inputs: list[Permutation] = []
        self.base: list[int] = []
        self.level_gens: list[list[Permutation]] = []
        self.transversals: list[dict[int, Permutation]] = []
        self.inverses: list[dict[int, Permutation]] = []
        self._identity = Permutation.identity(degree)

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for k in range(start, len(self.base)):
            beta = self.base[k]
            image = int(g.array[beta])
            if image == beta:
                continue
            inv = self.inverses[k].get(image)
            if inv is None:
                return g, k
            g = g * inv
        return g, len(self.base)

    def contains(self, g: Permutation) -> bool:
        """Exact only once the chain is complete."""
        residue, level = self.sift(g)
        return level == len(self.base) and residue.is_identity()

    def add_generator(self, g: Permutation) -> bool:
        """Add an input generator; returns False for the identity."""
        if g.degree != self.degree:
            raise DegreeMismatchError(
                f"generator of degree {g.degree} added to a group of degree {self.degree}"
            )
        if g.is_identity():
            return False
        self.inputs.append(g)
        self.replacer.add_generator(g)
        self._add_strong(g)
        return True

    def _add_strong(self, h: Permutation) -> int:
        depth = 0
        while depth < len(self.base) and int(h.array[self.base[depth]]) == self.base[depth]:
            depth += 1
        if depth == len(self.base):
            point = h.first_moved_point()
            assert point is not None
            self.base.append(point)
            self.level_gens.append([])
            self.transversals.append({point: self._identity})
            self.inverses.append({point: self._identity})
            logger.debug(f"Base extended with point {point + 1} (length {len(self.base)})")
        for i in range(depth + 1):
            self.level_gens[i].append(h)
            self._extend_orbit(i, h)
        return depth

    def _extend_orbit(self, i: int, h: Permutation) -> None:
        transversal = self.transversals[i]
        inverses = self.inverses[i]
        queue = []
        for x, u in list(transversal.items()):
            y = int(h.array[x])
            if y not in transversal:
                transversal[y] = u * h
                inverses[y] = transversal[y].inverse()
                queue.append(y)
        gens = self.level_gens[i]
        while queue:
            x = queue.pop()
            u = transversal[x]
            for s in gens:
                y = int(s.array[x])
                if y not in transversal:
                    transversal[y] = u * s
                    inverses[y] = transversal[y].inverse()
                    queue.append(y)

    def random_phase(self, known_order: Optional[int] = None) -> None:
        """Sift random elements until ``stationary_rounds`` consecutive ones pass."""
        stationary = 0
        while stationary < self.stationary_rounds:
            if known_order is not None and self.order() >= known_order:
                return
            residue, level = self.sift(self.replacer.sample())
            if level < len(self.base) or not residue.is_identity():
                self._add_strong(residue)
                stationary = 0
            else:
                stationary += 1

    def _schreier_failure(self, i: int) -> Optional[Permutation]:
        gens = self.inputs if i == 0 else self.level_gens[i]
        transversal = self.transversals[i]
        inverses = self.inverses[i]
        for x, u in transversal.items():
            for s in gens:
                y = int(s.array[x])
                g = u * s * inverses[y]
                residue, level = self.sift(g, i + 1)
                if level < len(self.base) or not residue.is_identity():
                    return residue
        return None

    def complete(self) -> None:
        """Deterministic verification: every Schreier generator sifts through."""
        i = len(self.base) - 1
        while i >= 0:
            residue = self._schreier_failure(i)
            if residue is None:
                i -= 1
                continue
            i = self._add_strong(residue)
        logger.debug(f"Chain verified: base length {len(self.base)}, order {self.order()}")

    def build(self, known_order: Optional[int] = None) -> None:
        """Run the random phase, then verify unless the order bound is met.

        Args:
            known_order: An upper bound for the group order; reaching it
                proves the chain complete
        """
        self.random_phase(known_order)
        order = self.order()
        if known_order is not None and order == known_order:
            return
        if known_order is not None and order > known_order:
            logger.error(f"Order bound {known_order} exceeded by chain order {order}")
        self.complete()

    def freeze(self) -> StabilizerChain:
        levels = tuple(
            ChainLevel(
                point=self.base[i],
                generators=tuple(self.level_gens[i]),
                transversal=MappingProxyType(dict(self.transversals[i])),
                inverses=MappingProxyType(dict(self.inverses[i])),
            )
            for i in range(len(self.base))
        )
        return StabilizerChain(degree=self.degree, base=tuple(self.base), levels=levels)


def build_chain(
    generators: Sequence[Permutation],
    degree: Optional[int] = None,
    known_order: Optional[int] = None,
    seed: int = 0,
    stationary_rounds: int = 20,
) -> StabilizerChain:
    """Build a verified stabilizer chain for the group generated by ``generators``.

    Args:
        generators: Degree-consistent generators (may be empty)
        degree: Required when ``generators`` is empty
        known_order: Optional upper bound on the order, used as an early exit
        seed: Seed of the randomized phase
        stationary_rounds: Random-phase exit after this many passing sifts

    Returns:
        The verified chain

    Raises:
        DegreeMismatchError: If generator degrees differ
    """
    degree = _common_degree(generators, degree)
    builder = ChainBuilder(degree, seed=seed, stationary_rounds=stationary_rounds)
    for g in generators:
        builder.add_generator(g)
    builder.build(known_order)
    return builder.freeze()


def _common_degree(generators: Iterable[Permutation], degree: Optional[int]) -> int:
    degrees = {g.degree for g in generators}
    if degree is not None:
        degrees.add(degree)
    if not degrees:
        raise UsageError("degree is required for an empty generator list")
    if len(degrees) > 1:
        raise DegreeMismatchError(f"generators of different degrees: {sorted(degrees)}")
    return degrees.pop()
