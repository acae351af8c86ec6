"""Builders for p-groups, direct products and wreath products.

Every builder returns a ``ConstructedGroup`` whose Sylow system is carried
along from the factors, so Hall subgroups never need to be searched for.

Wreath base layout: coordinate i of the base occupies the points
[i*deg(A), (i+1)*deg(A)); top generators move whole blocks.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .config import get_config
from .errors import DegreeBudgetError, FaithfulnessError, SylowSystemCorruptError, UsageError
from .expr import Action, Cyclic, Direct, ElemAbelian, GroupExpr, Iterated, Wreath
from .group import PermGroup, enumerate_elements
from .hall import verify_sylow_system
from .perm import POINT_DTYPE, Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SylowSystem:
    """Generators of one Sylow p-subgroup per prime, meant to permute pairwise."""

    generators: Mapping[int, tuple[Permutation, ...]]

    @classmethod
    def of(cls, generators: Mapping[int, Sequence[Permutation]]) -> SylowSystem:
        return cls(MappingProxyType({p: tuple(generators[p]) for p in sorted(generators)}))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self.generators)

    def for_prime(self, p: int) -> tuple[Permutation, ...]:
        return self.generators.get(p, ())

    def replace(self, p: int, gens: Sequence[Permutation]) -> SylowSystem:
        updated = dict(self.generators)
        updated[p] = tuple(gens)
        return SylowSystem.of(updated)


class ConstructedGroup:
    """A permutation group with the expression it was built from and its Sylow system.

    Hall subgroups and per-subset results are cached here; the caches are
    guarded by a lock so profile entries can be computed from worker threads.
    """

    def __init__(
        self,
        group: PermGroup,
        expr: GroupExpr,
        system: SylowSystem,
        action: Action = "natural",
    ):
        self.group = group
        self.expr = expr
        self.system = system
        self.action = action
        self.system_verified = False
        self.lock = threading.Lock()
        self.hall_cache: dict[frozenset[int], PermGroup] = {}
        self.h_cache: dict[frozenset[int], int] = {}
        self.d_cache: dict[frozenset[int], int] = {}

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def primes(self) -> tuple[int, ...]:
        return self.group.primes

    @property
    def weight(self) -> int:
        return self.group.weight

    @property
    def label(self) -> str:
        return self.expr.text()

    def with_system(self, system: SylowSystem) -> ConstructedGroup:
        """Same group with another (unverified) Sylow system and empty caches."""
        return ConstructedGroup(self.group, self.expr, system, self.action)

    def __repr__(self) -> str:
        return f"ConstructedGroup({self.label}, degree={self.degree}, action={self.action})"


def _check_budget(label: str, degree: int, hint: str = "") -> None:
    max_degree = get_config().max_degree
    if degree > max_degree:
        raise DegreeBudgetError(label + hint, degree, max_degree)


def _embed(g: Permutation, offset: int, degree: int) -> Permutation:
    """Copy of g acting on [offset, offset + deg(g)) inside ``degree`` points."""
    arr = np.arange(degree, dtype=POINT_DTYPE)
    arr[offset : offset + g.degree] = g.array + offset
    return Permutation._wrap(arr)


def _blocks(top: Permutation, block_size: int) -> Permutation:
    """Move block i to block top(i) rigidly."""
    arr = (top.array[:, None] * block_size + np.arange(block_size, dtype=POINT_DTYPE)[None, :])
    return Permutation._wrap(arr.ravel().astype(POINT_DTYPE))


def _orbit_representatives(gens: Sequence[Permutation], n: int) -> list[int]:
    """Smallest point of each orbit of <gens> on n points."""
    seen = np.zeros(n, dtype=bool)
    reps = []
    for start in range(n):
        if seen[start]:
            continue
        reps.append(start)
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g(x)
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return reps


def _regular_representation(group: PermGroup) -> Callable[[Permutation], Permutation]:
    """Map elements of ``group`` to their right-translation action on the group."""
    elements = enumerate_elements(group, cap=get_config().max_degree)
    index = {e.key(): i for i, e in enumerate(elements)}

    def represent(x: Permutation) -> Permutation:
        images = np.fromiter(
            (index[(e * x).key()] for e in elements), dtype=POINT_DTYPE, count=len(elements)
        )
        return Permutation._wrap(images)

    return represent


def _finish(
    generators: Sequence[Permutation],
    degree: int,
    expr: GroupExpr,
    system: dict[int, list[Permutation]],
    action: Action,
    predicted: int,
) -> ConstructedGroup:
    group = PermGroup(generators, degree=degree, known_order=predicted)
    if group.order != predicted:
        logger.error(f"{expr.text()}: built order {group.order}, predicted {predicted}")
        raise FaithfulnessError(
            f"{expr.text()} has order {group.order} but the formulas predict {predicted}"
        )
    result = ConstructedGroup(group, expr, SylowSystem.of(system), action)
    logger.debug(f"Built {expr.text()}: degree {degree}, order {predicted}")
    return result


def cyclic(p: int, k: int = 1) -> ConstructedGroup:
    """C(p^k) generated by one p^k-cycle."""
    expr = Cyclic(p=p, k=k)
    n = p**k
    _check_budget(expr.text(), n)
    gen = Permutation._wrap(np.roll(np.arange(n, dtype=POINT_DTYPE), -1))
    return _finish([gen], n, expr, {p: [gen]}, "natural", n)


def elementary_abelian(p: int, k: int = 1) -> ConstructedGroup:
    """(C_p)^k as k disjoint p-cycles."""
    expr = ElemAbelian(p=p, k=k)
    n = p * k
    _check_budget(expr.text(), n)
    cycle = Permutation._wrap(np.roll(np.arange(p, dtype=POINT_DTYPE), -1))
    gens = [_embed(cycle, i * p, n) for i in range(k)]
    return _finish(gens, n, expr, {p: gens}, "natural", p**k)


def direct_product(
    a: ConstructedGroup, b: ConstructedGroup, verify: bool = True
) -> ConstructedGroup:
    """A x B on deg(A) + deg(B) points, A first.

    Raises:
        DegreeBudgetError: If deg(A) + deg(B) exceeds the configured maximum
    """
    expr = Direct(left=a.expr, right=b.expr)
    degree = a.degree + b.degree
    _check_budget(expr.text(), degree)

    def left(g: Permutation) -> Permutation:
        return _embed(g, 0, degree)

    def right(g: Permutation) -> Permutation:
        return _embed(g, a.degree, degree)

    gens = [left(g) for g in a.group.generators] + [right(g) for g in b.group.generators]
    system: dict[int, list[Permutation]] = {}
    for p in sorted(set(a.system.primes) | set(b.system.primes)):
        system[p] = [left(g) for g in a.system.for_prime(p)]
        system[p] += [right(g) for g in b.system.for_prime(p)]
    result = _finish(gens, degree, expr, system, a.action, a.order * b.order)
    if verify:
        _verify_or_raise(result)
    return result


def wreath_product(
    a: ConstructedGroup,
    b: ConstructedGroup,
    action: Action = "natural",
    verify: bool = True,
) -> ConstructedGroup:
    """A wr B: d copies of A permuted by B.

    With the natural action d = deg(B); with the regular action B acts on its
    own |B| elements by right translation and d = |B|.

    Raises:
        DegreeBudgetError: If deg(A) * d exceeds the configured maximum
    """
    expr = Wreath(base=a.expr, top=b.expr, action=action)
    if action == "regular":
        d = b.order
        _check_budget(expr.text(), a.degree * d, " (the natural action needs fewer points)")
        top: Callable[[Permutation], Permutation] = _regular_representation(b.group)
    else:
        d = b.degree
        _check_budget(expr.text(), a.degree * d)

        def top(x: Permutation) -> Permutation:
            return x

    block = a.degree
    degree = block * d

    def copy(g: Permutation, coordinate: int) -> Permutation:
        return _embed(g, coordinate * block, degree)

    top_gens = [top(g) for g in b.group.generators]
    gens = [copy(g, i) for i in _orbit_representatives(top_gens, d) for g in a.group.generators]
    gens += [_blocks(t, block) for t in top_gens]

    system: dict[int, list[Permutation]] = {}
    for p in sorted(set(a.system.primes) | set(b.system.primes)):
        top_p = [top(g) for g in b.system.for_prime(p)]
        coordinates = _orbit_representatives(top_p, d)
        system[p] = [copy(g, i) for i in coordinates for g in a.system.for_prime(p)]
        system[p] += [_blocks(t, block) for t in top_p]

    result = _finish(gens, degree, expr, system, action, a.order**d * b.order)
    if verify:
        _verify_or_raise(result)
    return result


def iterated(
    h: ConstructedGroup, ell: int, action: Action = "natural", verify: bool = True
) -> ConstructedGroup:
    """[H]_1 = H, [H]_(k+1) = [H]_k wr H.

    Raises:
        UsageError: If ell < 1
        DegreeBudgetError: If an intermediate product is too large
    """
    if ell < 1:
        raise UsageError(f"iteration count must be >= 1, got {ell}")
    expr = Iterated(expr=h.expr, ell=ell)
    _check_budget(expr.text(), expr.degree(action))
    result = h
    for _ in range(ell - 1):
        result = wreath_product(result, h, action, verify=False)
    result = ConstructedGroup(result.group, expr, result.system, action)
    if verify:
        _verify_or_raise(result)
    return result


def _build(expr: GroupExpr, action: Action) -> ConstructedGroup:
    if isinstance(expr, Cyclic):
        return cyclic(expr.p, expr.k)
    if isinstance(expr, ElemAbelian):
        return elementary_abelian(expr.p, expr.k)
    if isinstance(expr, Direct):
        return direct_product(_build(expr.left, action), _build(expr.right, action), verify=False)
    if isinstance(expr, Wreath):
        return wreath_product(
            _build(expr.base, action), _build(expr.top, action), expr.action, verify=False
        )
    if isinstance(expr, Iterated):
        return iterated(_build(expr.expr, action), expr.ell, expr.action or action, verify=False)
    raise UsageError(f"unsupported expression node {type(expr).__name__}")


def build(
    expr: GroupExpr, action: Optional[Action] = None, verify: bool = True
) -> ConstructedGroup:
    """Build the group an expression describes.

    Args:
        expr: Expression tree
        action: Action for iterated powers; defaults to the configured one
        verify: Check the propagated Sylow system before returning

    Returns:
        The constructed group with its Sylow system

    Raises:
        DegreeBudgetError: If the required degree exceeds the configured maximum
    """
    action = action or get_config().action
    required = expr.degree(action)
    _check_budget(expr.text(), required)
    result = _build(expr, action)
    result.action = action
    logger.info(
        f"Built {expr.text()} ({action} action): degree {result.degree}, "
        f"{len(result.group.generators)} generators"
    )
    if verify:
        _verify_or_raise(result)
    return result


def _verify_or_raise(result: ConstructedGroup) -> None:
    report = verify_sylow_system(result)
    if not report.passed:
        raise SylowSystemCorruptError(
            f"propagated Sylow system of {result.label} failed verification: "
            + "; ".join(report.failures())
        )
