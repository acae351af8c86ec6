"""Covers of prime sets and Fitting-length bounds built from Hall subgroups.

All rational bounds are exact ``Fraction`` values; comparisons with the
measured Fitting length are done by cross-multiplication.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator, Optional, Sequence

from .config import get_config
from .construct import ConstructedGroup
from .errors import InvalidCoverError, UsageError
from .hall import (
    HallProfile,
    PrimeSet,
    all_subsets,
    hall_derived_length,
    hall_profile,
)
from .models import BoundEntry, BoundReport, LemmaCheck

logger = logging.getLogger(__name__)


def _key(subset: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return (len(subset), tuple(sorted(subset)))


@dataclass(frozen=True)
class Cover:
    """A set of at least three subsets of ``ground`` whose pairwise unions are ``ground``."""

    ground: frozenset[int]
    members: tuple[frozenset[int], ...]

    @property
    def t(self) -> int:
        return len(self.members)

    @property
    def degenerate(self) -> bool:
        return self.ground in self.members

    def text(self) -> str:
        return "{" + ",".join(PrimeSet(m).text() for m in self.members) + "}"

    def __str__(self) -> str:
        return self.text()


def is_cover(subsets: Iterable[Iterable[int]], ground: Iterable[int]) -> tuple[bool, bool]:
    """Whether the subsets (duplicates collapsed) form a cover of ``ground``.

    Returns:
        (is a cover, is degenerate)
    """
    pi = frozenset(ground)
    members = {frozenset(s) for s in subsets}
    degenerate = pi in members
    if len(members) < 3 or any(not m <= pi for m in members):
        return False, degenerate
    ok = all(a | b == pi for a, b in combinations(members, 2))
    return ok, degenerate


def make_cover(subsets: Iterable[Iterable[int]], ground: Iterable[int]) -> Cover:
    """Validated cover; duplicate members collapse.

    Raises:
        InvalidCoverError: If fewer than three distinct members remain or a
            pairwise union misses a prime
    """
    pi = frozenset(ground)
    members = {frozenset(s) for s in subsets}
    ok, _ = is_cover(members, pi)
    if not ok:
        texts = ",".join(PrimeSet(m).text() for m in sorted(members, key=_key))
        raise InvalidCoverError(f"{{{texts}}} is not a cover of {PrimeSet(pi).text()}")
    return Cover(pi, tuple(sorted(members, key=_key)))


def parse_cover(text: str, ground: Iterable[int]) -> Cover:
    """Parse ``{2,3};{3,5};{2,5}`` into a cover of ``ground``."""
    parts = [p for p in text.split(";") if p.strip()]
    return make_cover([PrimeSet.parse(p) for p in parts], ground)


def cover_weight(cover: Cover, profile: HallProfile) -> int:
    """Sum of h(G_rho) over the members rho.

    Raises:
        MissingProfileEntryError: If a member has no profile value
    """
    return sum(profile[m] for m in cover.members)


def _disjoint_families(ground: Sequence[int], k: int) -> Iterator[list[frozenset[int]]]:
    """Unordered families of k pairwise disjoint nonempty subsets of ``ground``."""
    blocks: list[set[int]] = []

    def place(i: int) -> Iterator[list[frozenset[int]]]:
        if len(blocks) + (len(ground) - i) < k:
            return
        if i == len(ground):
            if len(blocks) == k:
                yield [frozenset(b) for b in blocks]
            return
        x = ground[i]
        yield from place(i + 1)
        for b in blocks:
            b.add(x)
            yield from place(i + 1)
            b.discard(x)
        if len(blocks) < k:
            blocks.append({x})
            yield from place(i + 1)
            blocks.pop()

    yield from place(0)


def enumerate_covers(
    ground: Iterable[int], t: int, include_degenerate: bool = True
) -> list[Cover]:
    """Every cover of order t of ``ground``, each once.

    Members of a cover are exactly the complements of pairwise disjoint
    subsets, at most one of them empty, so the search runs over disjoint
    families instead of all t-sets of subsets.

    Raises:
        UsageError: If t < 3 or the ground set exceeds the configured limit
    """
    if t < 3:
        raise UsageError(f"a cover has order t >= 3, got {t}")
    pi = tuple(sorted(ground))
    limit = get_config().cover_ground_limit
    if len(pi) > limit:
        raise UsageError(
            f"cover enumeration is limited to ground sets of size {limit}, got {len(pi)}"
        )
    full = frozenset(pi)
    found = []
    for family in _disjoint_families(pi, t):
        found.append(Cover(full, tuple(sorted((full - c for c in family), key=_key))))
    if include_degenerate:
        for family in _disjoint_families(pi, t - 1):
            members = [full] + [full - c for c in family]
            found.append(Cover(full, tuple(sorted(members, key=_key))))
    found.sort(key=lambda c: [_key(m) for m in c.members])
    return found


def canonical_cover(ground: Iterable[int]) -> Optional[Cover]:
    """The cover by all complements of single primes (needs three primes)."""
    pi = frozenset(ground)
    if len(pi) < 3:
        return None
    return make_cover([pi - {p} for p in pi], pi)


def cover_properties(cover: Cover) -> list[str]:
    """Structural facts every cover satisfies; returns the ones that fail."""
    w = len(cover.ground)
    problems = []
    for p in sorted(cover.ground):
        missing = sum(1 for m in cover.members if p not in m)
        if missing > 1:
            problems.append(f"{cover.text()}: prime {p} missing from {missing} members")
    total = sum(len(m) for m in cover.members)
    if total < (cover.t - 1) * w:
        problems.append(f"{cover.text()}: member sizes sum to {total} < {(cover.t - 1) * w}")
    if not cover.degenerate:
        if cover.t > w:
            problems.append(f"{cover.text()}: non-degenerate cover of order {cover.t} > w = {w}")
        if cover.t == w and any(len(m) != w - 1 for m in cover.members):
            problems.append(f"{cover.text()}: order w but a member is not of size w-1")
    return problems


def two_prime_cover_check(ground: Iterable[int]) -> list[str]:
    """A two-element prime set has exactly one 3-cover, the degenerate one."""
    pi = frozenset(ground)
    if len(pi) != 2:
        return []
    covers = enumerate_covers(pi, 3)
    p, q = sorted(pi)
    expected = make_cover([{p}, {q}, pi], pi)
    if covers != [expected]:
        return [f"3-covers of {PrimeSet(pi).text()}: {[c.text() for c in covers]}"]
    return []


def cover_bound(theta: int, t: int) -> Fraction:
    """(Theta - 2)/(t - 2).

    Raises:
        UsageError: If t < 3
    """
    if t < 3:
        raise UsageError(f"cover order must be >= 3, got {t}")
    return Fraction(theta - 2, t - 2)


def three_halls_bound(
    profile: HallProfile, sigma: Iterable[int], tau: Iterable[int], upsilon: Iterable[int]
) -> Optional[int]:
    """h(G_sigma) + h(G_tau) + h(G_upsilon) - 2, or None unless every pairwise union is pi."""
    pi = frozenset(profile.primes)
    s, t, u = frozenset(sigma) & pi, frozenset(tau) & pi, frozenset(upsilon) & pi
    if s | t != pi or t | u != pi or u | s != pi:
        return None
    return profile[s] + profile[t] + profile[u] - 2


def two_complements_bound(profile: HallProfile) -> Optional[tuple[int, int, int]]:
    """Largest h(G_p') + h(G_q') - 1 over p != q, for at least four primes.

    Returns:
        (bound, p, q) or None when fewer than four primes divide |G|
    """
    if len(profile.primes) < 4:
        return None
    ranked = sorted(profile.primes, key=lambda p: (-profile.complement_length(p), p))
    p, q = ranked[0], ranked[1]
    return profile.complement_length(p) + profile.complement_length(q) - 1, p, q


def recursion_bound(previous: int, ell: int) -> Fraction:
    """(ell * m - 2)/(ell - 2), m the largest h over (ell-1)-prime Hall subgroups.

    Raises:
        UsageError: If ell < 3
    """
    if ell < 3:
        raise UsageError(f"subset size must be >= 3, got {ell}")
    return Fraction(ell * previous - 2, ell - 2)


def recursion_bound_simplified(previous: int, w: int) -> int:
    """3m - 2 for three primes, 2m - 1 from four primes on (m over (w-1)-subsets)."""
    if w < 3:
        raise UsageError(f"needs at least three primes, got {w}")
    return 3 * previous - 2 if w == 3 else 2 * previous - 1


def pairs_bound(pair_max: int, w: int) -> int:
    """w(w-1)/2 * (m - 1) + 1, m the largest h over two-prime Hall subgroups.

    Raises:
        UsageError: If w < 3
    """
    if w < 3:
        raise UsageError(f"needs at least three primes, got {w}")
    return w * (w - 1) // 2 * (pair_max - 1) + 1


def pair_product_bound(s: int, r: int) -> int:
    """s(r + 1) when h(G_p'), h(G_q') <= s and h(G_pq) <= r."""
    if s < 0 or r < 0:
        raise UsageError("bound inputs must be non-negative")
    return s * (r + 1)


def factorized_bound(h_a: int, h_b: int, d_b: int) -> int:
    """h(A) + h(B) + 4 d(B) - 1 for G = AB."""
    if min(h_a, h_b, d_b) < 0:
        raise UsageError("bound inputs must be non-negative")
    return h_a + h_b + 4 * d_b - 1


def complement_inequality_sweep(
    w_range: range = range(4, 17), lam_range: range = range(4, 65)
) -> LemmaCheck:
    """w*lam - 4 <= 2(w - 2)(lam - 1) over the given ranges."""
    failures = [
        f"w={w}, lambda={lam}: {w * lam - 4} > {2 * (w - 2) * (lam - 1)}"
        for w in w_range
        for lam in lam_range
        if w * lam - 4 > 2 * (w - 2) * (lam - 1)
    ]
    return LemmaCheck(
        name="complement-inequality",
        checked=len(w_range) * len(lam_range),
        failures=failures,
    )


def bound_entry(
    name: str,
    actual: int,
    value: Fraction | int,
    inputs: dict[str, str],
    target: str = "h(G)",
    note: str = "",
) -> BoundEntry:
    value = Fraction(value)
    ok = actual * value.denominator <= value.numerator
    return BoundEntry(
        name=name,
        inputs=inputs,
        target=target,
        actual=actual,
        numerator=value.numerator,
        denominator=value.denominator,
        status="PASS" if ok else "VIOLATION",
        note=note,
    )


def not_applicable(name: str, actual: int, note: str, target: str = "h(G)") -> BoundEntry:
    return BoundEntry(name=name, target=target, actual=actual, status="N/A", note=note)


def three_halls_sweep(primes: Sequence[int], profile: HallProfile) -> list[BoundEntry]:
    """Every triple of nonempty subsets with pairwise unions pi, as bound entries."""
    h = profile[frozenset(primes)]
    entries = []
    subsets = [s for s in all_subsets(primes) if s]
    for s, t, u in combinations_with_replacement(subsets, 3):
        value = three_halls_bound(profile, s, t, u)
        if value is None:
            continue
        entries.append(
            bound_entry(
                "three-halls",
                h,
                value,
                {"sigma": s.text(), "tau": t.text(), "upsilon": u.text()},
            )
        )
    return entries


def _cover_entries(
    primes: Sequence[int], profile: HallProfile, h: int, t_max: Optional[int]
) -> tuple[list[BoundEntry], list[Cover]]:
    w = len(primes)
    limit = get_config().cover_ground_limit
    if w > limit:
        covers = [c for c in [canonical_cover(primes)] if c is not None]
    else:
        top = t_max if t_max is not None else w + 1
        covers = [c for t in range(3, top + 1) for c in enumerate_covers(primes, t)]
    entries = []
    for cover in covers:
        theta = cover_weight(cover, profile)
        entries.append(
            bound_entry(
                "cover",
                h,
                cover_bound(theta, cover.t),
                {"cover": cover.text(), "t": str(cover.t), "theta": str(theta)},
            )
        )
    if not covers:
        entries.append(not_applicable("cover", h, f"no cover of {PrimeSet(primes).text()}"))
    return entries, covers


def check_all(
    group: ConstructedGroup,
    t_max: Optional[int] = None,
    include_cjs: Optional[bool] = None,
    sweep: bool = False,
) -> BoundReport:
    """Measure the Hall profile of a group and evaluate every applicable bound.

    Args:
        group: Constructed group with a Sylow system
        t_max: Largest cover order to enumerate (default: configured, else w + 1)
        include_cjs: Evaluate the factorized bound on complementary Hall pairs
        sweep: Evaluate the three-halls bound on every admissible triple

    Returns:
        The bound report; it passes iff no entry is a VIOLATION and every
        lemma check holds
    """
    config = get_config()
    t_max = t_max if t_max is not None else config.cover_t_max
    include_cjs = config.include_cjs if include_cjs is None else include_cjs
    timings: dict[str, float] = {}

    start = time.perf_counter()
    primes = tuple(group.primes)
    w = len(primes)
    pi = frozenset(primes)
    profile = hall_profile(group, [s for s in all_subsets(primes) if s])
    h = profile[pi]
    frak = {ell: max(profile[s] for s in all_subsets(primes, ell)) for ell in range(w + 1)}
    timings["profile"] = time.perf_counter() - start
    logger.info(f"Profile of {group.label}: h(G) = {h}, w = {w}")

    report = BoundReport(
        group=group.label,
        h_actual=h,
        weight=w,
        profile=profile.as_text_dict(),
        frak=frak,
    )
    entries = report.entries

    start = time.perf_counter()
    if w == 0:
        entries.append(not_applicable("three-halls", h, "trivial group"))
        covers: list[Cover] = []
    else:
        cover_entries, covers = _cover_entries(primes, profile, h, t_max)
        entries.extend(cover_entries)

        if sweep:
            entries.extend(three_halls_sweep(primes, profile))
        elif w == 1:
            whole = PrimeSet(pi).text()
            entries.append(
                bound_entry(
                    "three-halls",
                    h,
                    3 * h - 2,
                    {"sigma": whole, "tau": whole, "upsilon": whole},
                )
            )
        for p, q in combinations(primes, 2):
            value = three_halls_bound(profile, pi - {p}, pi - {q}, {p, q})
            assert value is not None
            if not sweep:
                entries.append(
                    bound_entry(
                        "three-halls",
                        h,
                        value,
                        {
                            "sigma": PrimeSet(pi - {p}).text(),
                            "tau": PrimeSet(pi - {q}).text(),
                            "upsilon": PrimeSet({p, q}).text(),
                        },
                    )
                )
            s = max(profile.complement_length(p), profile.complement_length(q))
            r = profile[frozenset({p, q})]
            product = pair_product_bound(s, r)
            entries.append(
                bound_entry("pair-product", h, product, {"p": str(p), "q": str(q), "s": str(s), "r": str(r)})
            )
            if product < value:
                report.observations.append(
                    f"pair-product bound {product} is below the three-halls bound {value} "
                    f"for p={p}, q={q}"
                )

    complements = two_complements_bound(profile)
    if complements is not None:
        value, p, q = complements
        entries.append(
            bound_entry(
                "two-complements",
                h,
                value,
                {
                    "p": str(p),
                    "q": str(q),
                    "lambda": str(profile.complement_length(p) + profile.complement_length(q)),
                },
            )
        )
    elif w == 3:
        ranked = sorted(primes, key=lambda x: (-profile.complement_length(x), x))
        extension = profile.complement_length(ranked[0]) + profile.complement_length(ranked[1]) - 1
        verdict = "would hold" if h <= extension else "would fail"
        entries.append(
            not_applicable(
                "two-complements",
                h,
                f"needs w >= 4; with three primes the same formula gives {extension} and {verdict}",
            )
        )
    else:
        entries.append(not_applicable("two-complements", h, f"needs w >= 4, w = {w}"))

    if w >= 3:
        for ell in range(3, w + 1):
            target = "h(G)" if ell == w else f"max h over {ell}-prime Halls"
            entries.append(
                bound_entry(
                    "recursion",
                    frak[ell],
                    recursion_bound(frak[ell - 1], ell),
                    {"ell": str(ell), "previous": str(frak[ell - 1])},
                    target=target,
                )
            )
        entries.append(
            bound_entry(
                "recursion-simplified",
                h,
                recursion_bound_simplified(frak[w - 1], w),
                {"w": str(w), "previous": str(frak[w - 1])},
            )
        )
        entries.append(
            bound_entry("pairs", h, pairs_bound(frak[2], w), {"w": str(w), "pair_max": str(frak[2])})
        )
    else:
        entries.append(not_applicable("recursion", h, f"needs w >= 3, w = {w}"))
        entries.append(not_applicable("pairs", h, f"needs w >= 3, w = {w}"))
    timings["bounds"] = time.perf_counter() - start

    if include_cjs and w >= 2:
        start = time.perf_counter()
        for sigma in all_subsets(primes):
            if not sigma or sigma == pi:
                continue
            rest = PrimeSet(pi - sigma)
            h_a, h_b = profile[sigma], profile[rest]
            d_b = hall_derived_length(group, rest)
            entries.append(
                bound_entry(
                    "factorized",
                    h,
                    factorized_bound(h_a, h_b, d_b),
                    {"A": sigma.text(), "B": rest.text(), "hA": str(h_a), "hB": str(h_b), "dB": str(d_b)},
                )
            )
        timings["factorized"] = time.perf_counter() - start

    for ell in range(1, w + 1):
        if frak[ell] < frak[ell - 1]:
            report.observations.append(
                f"max Hall length drops from {frak[ell - 1]} to {frak[ell]} at subset size {ell}"
            )

    report.lemmas.append(complement_inequality_sweep())
    if covers:
        failures = [problem for c in covers for problem in cover_properties(c)]
        failures += two_prime_cover_check(primes)
        report.lemmas.append(LemmaCheck(name="cover-structure", checked=len(covers), failures=failures))
    report.timings = timings

    for entry in report.violations:
        logger.error(f"{group.label}: {entry.name} {entry.inputs} violated ({entry.actual} > {entry.value})")
    logger.info(
        f"Bound check of {group.label} finished: {len(entries)} entries, "
        f"{'PASS' if report.passed else 'VIOLATION'}"
    )
    return report

