"""Permutation groups backed by a lazily built stabilizer chain."""

from __future__ import annotations

import logging
import threading
from collections import deque
from random import Random
from typing import Iterable, Optional, Sequence

from sympy import primerange

from .chain import ChainBuilder, StabilizerChain, _common_degree
from .config import get_config
from .errors import ContainmentError, DegreeMismatchError, OracleScaleError
from .perm import Permutation, format_permutation

logger = logging.getLogger(__name__)


def prime_divisors(n: int, largest: int) -> tuple[int, ...]:
    """Prime divisors of n, all of which are known to be <= ``largest``.

    The order of a group of degree d divides d!, so trial division by the
    primes up to d is exhaustive.
    """
    found = []
    for p in primerange(2, largest + 1):
        if n % p == 0:
            found.append(int(p))
            while n % p == 0:
                n //= p
        if n == 1:
            break
    if n != 1:
        raise ValueError(f"order has a prime factor above {largest}")
    return tuple(found)


def prime_part(n: int, primes: Iterable[int]) -> int:
    """Largest divisor of n whose prime divisors all lie in ``primes``."""
    part = 1
    for p in set(primes):
        while n % p == 0:
            n //= p
            part *= p
    return part


class PermGroup:
    """A group generated by permutations of a common degree.

    The chain is built on first use under a lock, so the group can be shared
    between threads. ``known_order`` must be an upper bound on the order (a
    formula from the construction); it only shortens chain construction.
    """

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: Optional[int] = None,
        known_order: Optional[int] = None,
        chain: Optional[StabilizerChain] = None,
    ):
        self.degree = _common_degree(generators, degree)
        self.generators: tuple[Permutation, ...] = tuple(
            g for g in generators if not g.is_identity()
        )
        self._known_order = known_order
        self._chain = chain
        self._lock = threading.Lock()
        self._primes: Optional[tuple[int, ...]] = None

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls([], degree=degree, known_order=1)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    config = get_config()
                    builder = ChainBuilder(
                        self.degree, seed=config.seed, stationary_rounds=config.stationary_rounds
                    )
                    for g in self.generators:
                        builder.add_generator(g)
                    builder.build(self._known_order)
                    self._chain = builder.freeze()
                    logger.debug(
                        f"Chain built for degree {self.degree}: base length "
                        f"{len(self._chain.base)}, order {self._chain.order}"
                    )
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order

    @property
    def primes(self) -> tuple[int, ...]:
        """pi(G): sorted prime divisors of the order."""
        if self._primes is None:
            self._primes = prime_divisors(self.order, self.degree)
        return self._primes

    @property
    def weight(self) -> int:
        """w(G) = |pi(G)|."""
        return len(self.primes)

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, g: Permutation) -> bool:
        """True iff g is a product of the generators.

        Raises:
            DegreeMismatchError: If g has another degree
        """
        if g.degree != self.degree:
            raise DegreeMismatchError(
                f"permutation of degree {g.degree} tested in a group of degree {self.degree}"
            )
        return self.chain.contains(g)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def random_element(self, rng: Random) -> Permutation:
        return self.chain.random_element(rng)

    def subgroup(self, gens: Sequence[Permutation], known_order: Optional[int] = None) -> PermGroup:
        """Subgroup generated by ``gens``, each checked for membership.

        Raises:
            ContainmentError: Naming the first generator outside the group
        """
        for g in gens:
            if not self.contains(g):
                raise ContainmentError("generator is not in the group", format_permutation(g))
        return PermGroup(list(gens), degree=self.degree, known_order=known_order)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def __repr__(self) -> str:
        gens = ", ".join(format_permutation(g) for g in self.generators[:4])
        more = ", ..." if len(self.generators) > 4 else ""
        return f"PermGroup(<{gens}{more}>, degree={self.degree})"


def enumerate_elements(group: PermGroup, cap: int) -> list[Permutation]:
    """All elements by breadth-first closure under right multiplication.

    Raises:
        OracleScaleError: If the order exceeds ``cap``
    """
    if group.order > cap:
        raise OracleScaleError(
            f"oracle scale exceeded: group order {group.order} is above the cap {cap}"
        )
    identity = Permutation.identity(group.degree)
    seen = {identity}
    elements = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in group.generators:
            y = x * g
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
    return elements
