"""Hall subgroups from Sylow systems and Fitting lengths over prime subsets."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import TYPE_CHECKING, Optional

from sympy import isprime

from .chain import build_chain
from .config import get_config
from .errors import MissingProfileEntryError, SylowSystemCorruptError, UsageError
from .group import PermGroup, prime_part
from .models import SylowCheck, SylowReport
from .series import derived_length, fitting_length

if TYPE_CHECKING:
    from .construct import ConstructedGroup

logger = logging.getLogger(__name__)


class PrimeSet(frozenset[int]):
    """A set of primes, printed sorted as ``{2,3}``."""

    def __new__(cls, primes: Iterable[int] = ()) -> PrimeSet:
        values = [int(p) for p in primes]
        for p in values:
            if not isprime(p):
                raise UsageError(f"{p} is not a prime")
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        """Parse ``2,3``, ``{2,3}`` or ``{}``."""
        body = text.strip().strip("{}").strip()
        if not body:
            return cls()
        try:
            return cls(int(x) for x in body.split(","))
        except ValueError as e:
            if isinstance(e, UsageError):
                raise
            raise UsageError(f"could not parse prime set {text!r}")

    def text(self) -> str:
        return "{" + ",".join(str(p) for p in sorted(self)) + "}"

    def __repr__(self) -> str:
        return f"PrimeSet({self.text()})"


def complement(primes: Iterable[int], p: int) -> PrimeSet:
    """pi minus {p}."""
    return PrimeSet(q for q in primes if q != p)


class HallProfile(Mapping[frozenset[int], int]):
    """h(G_sigma) for the requested prime subsets of pi(G)."""

    def __init__(self, primes: Sequence[int], values: Mapping[frozenset[int], int]):
        self.primes = tuple(primes)
        self._values = {frozenset(k): v for k, v in values.items()}

    def __getitem__(self, sigma: frozenset[int]) -> int:
        key = frozenset(sigma) & frozenset(self.primes)
        if not key:
            return 0
        try:
            return self._values[key]
        except KeyError:
            raise MissingProfileEntryError(f"no Fitting length recorded for {PrimeSet(key).text()}")

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(sorted(self._values, key=lambda s: (len(s), sorted(s))))

    def __len__(self) -> int:
        return len(self._values)

    def complement_length(self, p: int) -> int:
        """h(G_p') where G_p' = G when p is not in pi(G)."""
        return self[frozenset(self.primes) - {p}]

    def as_text_dict(self) -> dict[str, int]:
        return {PrimeSet(k).text(): self._values[k] for k in self}


def hall_subgroup(group: ConstructedGroup, sigma: Iterable[int]) -> PermGroup:
    """G_sigma: the subgroup generated by the Sylow members for primes in sigma.

    Raises:
        SylowSystemCorruptError: If the generated subgroup is not of order
            the sigma-part of |G|
    """
    primes = frozenset(group.primes)
    key = frozenset(sigma) & primes
    if not key:
        return PermGroup.trivial(group.degree)
    if key == primes:
        return group.group
    with group.lock:
        cached = group.hall_cache.get(key)
    if cached is not None:
        return cached

    expected = prime_part(group.order, key)
    gens = [g for p in sorted(key) for g in group.system.for_prime(p)]
    # Upper bound only for a verified system.
    hint = expected if group.system_verified else None
    hall = PermGroup(gens, degree=group.degree, known_order=hint)
    if hall.order != expected:
        logger.error(
            f"{group.label}: <G_sigma> for sigma={PrimeSet(key).text()} has order "
            f"{hall.order}, expected {expected}"
        )
        raise SylowSystemCorruptError(
            f"Sylow system corrupt: the {PrimeSet(key).text()}-subgroup has order "
            f"{hall.order}, expected {expected}"
        )
    with group.lock:
        group.hall_cache.setdefault(key, hall)
    return hall


def verify_sylow_system(group: ConstructedGroup) -> SylowReport:
    """Check every member and every pair of members against the prime parts of |G|.

    The pair check compares the order of <G_p, G_q> with the {p,q}-part of
    |G|; equality holds exactly when G_p G_q = G_q G_p.
    """
    config = get_config()
    report = SylowReport(group=group.label)
    primes = group.primes
    for p in primes:
        gens = group.system.for_prime(p)
        expected = prime_part(group.order, [p])
        chain = build_chain(
            gens,
            degree=group.degree,
            known_order=expected,
            seed=config.seed,
            stationary_rounds=config.stationary_rounds,
        )
        report.checks.append(SylowCheck(primes=[p], measured=chain.order, expected=expected))
    for p, q in combinations(primes, 2):
        gens = list(group.system.for_prime(p)) + list(group.system.for_prime(q))
        expected = prime_part(group.order, [p, q])
        chain = build_chain(
            gens, degree=group.degree, seed=config.seed, stationary_rounds=config.stationary_rounds
        )
        report.checks.append(SylowCheck(primes=[p, q], measured=chain.order, expected=expected))
    group.system_verified = report.passed
    if report.passed:
        logger.info(f"Sylow system of {group.label} verified ({len(report.checks)} checks)")
    else:
        logger.warning(f"Sylow system of {group.label} failed: {'; '.join(report.failures())}")
    return report


def _cached(
    group: ConstructedGroup, cache: dict[frozenset[int], int], key: frozenset[int]
) -> Optional[int]:
    with group.lock:
        return cache.get(key)


def hall_fitting_length(group: ConstructedGroup, sigma: Iterable[int]) -> int:
    """h(G_sigma), cached on the group."""
    key = frozenset(sigma) & frozenset(group.primes)
    value = _cached(group, group.h_cache, key)
    if value is None:
        value = fitting_length(hall_subgroup(group, key))
        logger.info(f"h(G_{PrimeSet(key).text()}) = {value} for {group.label}")
        with group.lock:
            group.h_cache.setdefault(key, value)
    return value


def hall_derived_length(group: ConstructedGroup, sigma: Iterable[int]) -> int:
    """d(G_sigma), cached on the group."""
    key = frozenset(sigma) & frozenset(group.primes)
    value = _cached(group, group.d_cache, key)
    if value is None:
        value = derived_length(hall_subgroup(group, key))
        with group.lock:
            group.d_cache.setdefault(key, value)
    return value


def hall_profile(
    group: ConstructedGroup, subsets: Iterable[Iterable[int]], parallel: Optional[int] = None
) -> HallProfile:
    """h(G_sigma) for each requested sigma.

    Args:
        group: Group carrying a Sylow system
        subsets: Prime subsets; primes outside pi(G) are ignored
        parallel: Worker threads (defaults to the configured value)

    Returns:
        Profile keyed by sigma intersected with pi(G)
    """
    primes = frozenset(group.primes)
    keys = sorted({frozenset(s) & primes for s in subsets}, key=lambda s: (len(s), sorted(s)))
    workers = parallel or get_config().parallel
    if workers > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda k: hall_fitting_length(group, k), keys))
    else:
        values = [hall_fitting_length(group, k) for k in keys]
    return HallProfile(group.primes, dict(zip(keys, values)))


def all_subsets(primes: Sequence[int], size: Optional[int] = None) -> list[PrimeSet]:
    sizes = range(len(primes) + 1) if size is None else [size]
    return [PrimeSet(c) for k in sizes for c in combinations(sorted(primes), k)]


def max_hall_length(group: ConstructedGroup, size: int) -> int:
    """Largest h(G_sigma) over the subsets sigma of pi(G) with ``size`` primes.

    Raises:
        UsageError: If size is outside 0..w(G)
    """
    if not 0 <= size <= group.weight:
        raise UsageError(f"subset size must lie in 0..{group.weight}, got {size}")
    if size == 0:
        return 0
    profile = hall_profile(group, all_subsets(group.primes, size))
    return max(profile.values())
