"""Permutations on {0..n-1} and cycle-notation text.

Composition is left to right: ``a * b`` applies ``a`` first, then ``b``.
Points are 0-based internally and 1-based in every piece of text.
"""

from __future__ import annotations

import math
import re
from random import Random
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeMismatchError, UsageError

POINT_DTYPE = np.int32

_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*[ ,]\s*\d+)*)?\s*\)")


class Permutation:
    """Immutable bijection of {0..n-1} backed by a read-only numpy array."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int]):
        arr = np.array(list(images), dtype=POINT_DTYPE)
        if arr.ndim != 1 or arr.size < 1:
            raise UsageError("a permutation needs degree n >= 1")
        if not np.array_equal(np.sort(arr), np.arange(arr.size, dtype=POINT_DTYPE)):
            raise UsageError(f"not a permutation of 0..{arr.size - 1}: {arr.tolist()}")
        arr.flags.writeable = False
        self._images = arr
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> Permutation:
        """Wrap an array already known to be a permutation."""
        p = cls.__new__(cls)
        arr.flags.writeable = False
        p._images = arr
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise UsageError("a permutation needs degree n >= 1")
        return cls._wrap(np.arange(degree, dtype=POINT_DTYPE))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles, applied left to right."""
        result = cls.identity(degree)
        for cycle in cycles:
            if not cycle:
                continue
            if max(cycle) >= degree or min(cycle) < 0:
                raise UsageError(f"cycle {tuple(c + 1 for c in cycle)} exceeds degree {degree}")
            if len(set(cycle)) != len(cycle):
                raise UsageError(f"cycle {tuple(c + 1 for c in cycle)} repeats a point")
            arr = np.arange(degree, dtype=POINT_DTYPE)
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                arr[a] = b
            result = result * cls._wrap(arr)
        return result

    @property
    def degree(self) -> int:
        return int(self._images.size)

    @property
    def array(self) -> np.ndarray:
        return self._images

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(i) for i in self._images)

    def __call__(self, point: int) -> int:
        return int(self._images[point])

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise DegreeMismatchError(
                f"cannot compose permutations of degree {self.degree} and {other.degree}"
            )
        return Permutation._wrap(other._images[self._images])

    def inverse(self) -> Permutation:
        inv = np.empty_like(self._images)
        inv[self._images] = np.arange(self.degree, dtype=POINT_DTYPE)
        return Permutation._wrap(inv)

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g: Permutation) -> Permutation:
        """Return g^-1 * self * g."""
        return g.inverse() * self * g

    def commutator(self, other: Permutation) -> Permutation:
        """Return [self, other] = self^-1 other^-1 self other."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._images, np.arange(self.degree, dtype=POINT_DTYPE)))

    def support(self) -> tuple[int, ...]:
        moved = np.nonzero(self._images != np.arange(self.degree, dtype=POINT_DTYPE))[0]
        return tuple(int(i) for i in moved)

    def first_moved_point(self) -> int | None:
        moved = np.nonzero(self._images != np.arange(self.degree, dtype=POINT_DTYPE))[0]
        return int(moved[0]) if moved.size else None

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen: set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return bool(np.array_equal(self._images, other._images))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._images.tobytes())
        return self._hash

    def key(self) -> bytes:
        return self._images.tobytes()

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply a first, then b.

    Raises:
        DegreeMismatchError: If the degrees differ
    """
    return a * b


def format_permutation(p: Permutation) -> str:
    """Cycle notation with 1-based points; the identity prints as ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based cycle notation such as ``(1 2 3)(4 5)``.

    Args:
        text: Cycle notation; commas or spaces separate points
        degree: Degree of the result (defaults to the largest point)

    Returns:
        The parsed permutation

    Raises:
        UsageError: If the text is not a product of cycles
    """
    stripped = text.strip()
    cycles: list[list[int]] = []
    pos = 0
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        match = _CYCLE_RE.match(stripped, pos)
        if match is None:
            raise UsageError(f"could not parse permutation {text!r} at position {pos}")
        if match.group(1):
            points = [int(x) for x in re.split(r"[\s,]+", match.group(1).strip())]
            if min(points) < 1:
                raise UsageError(f"points are 1-based, got 0 in {text!r}")
            cycles.append([x - 1 for x in points])
        pos = match.end()
    largest = max((max(c) + 1 for c in cycles), default=1)
    if degree is None:
        degree = largest
    elif largest > degree:
        raise UsageError(f"permutation {text!r} moves point {largest} beyond degree {degree}")
    return Permutation.from_cycles(cycles, degree)


def parse_generator_list(text: str, degree: int | None = None) -> list[Permutation]:
    """Parse ``<(1 2),(1 2 3)>`` (angle brackets optional) into permutations.

    All permutations are lifted to a common degree.
    """
    body = text.strip()
    if body.startswith("<") and body.endswith(">"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return []
    tokens = [t for t in re.split(r"\)\s*,\s*\(", body)]
    pieces = []
    for i, tok in enumerate(tokens):
        if i > 0:
            tok = "(" + tok
        if i < len(tokens) - 1:
            tok = tok + ")"
        pieces.append(tok)
    largest = max(
        (int(x) for x in re.findall(r"\d+", body)),
        default=1,
    )
    n = max(degree or 0, largest)
    return [parse_permutation(piece, n) for piece in pieces]


class ProductReplacer:
    """Approximately uniform random elements of a generated group.

    Product replacement ("rattle") with a reservoir and accumulators, driven
    by a seeded ``random.Random`` so runs are reproducible.
    """

    def __init__(self, degree: int, rng: Random, extra_slots: int = 5, accumulators: int = 5,
                 scramble: int = 30, scramble_factor: int = 4):
        self.degree = degree
        self.rng = rng
        self.extra_slots = extra_slots
        self.scramble_steps = scramble
        self.scramble_factor = scramble_factor
        ident = Permutation.identity(degree)
        self.reservoir: list[Permutation] = [ident] * extra_slots
        self.accus: list[Permutation] = [ident] * accumulators
        self.accu = 0
        self._dirty = False

    def add_generator(self, gen: Permutation) -> None:
        self.reservoir.append(gen)
        self._dirty = True

    def sample(self) -> Permutation:
        if len(self.reservoir) == self.extra_slots:
            return Permutation.identity(self.degree)
        if self._dirty:
            self._dirty = False
            steps = max(self.scramble_steps,
                        self.scramble_factor * (len(self.reservoir) - self.extra_slots))
            for _ in range(steps):
                self._stir()
        return self._stir()

    def _stir(self) -> Permutation:
        i = self.rng.randrange(1, len(self.reservoir))
        j = self.rng.randrange(1, len(self.reservoir))

        p = self.reservoir[i]
        if self.rng.randrange(2):
            p = p.inverse()
        self.reservoir[0] = c = self.reservoir[0] * p

        if self.rng.randrange(2):
            c = c.inverse()
        self.reservoir[j] = q = self.reservoir[j] * c

        if self.rng.randrange(2):
            q = q.inverse()
        self.accu = (self.accu + 1) % len(self.accus)
        self.accus[self.accu] = r = self.accus[self.accu] * q
        return r
