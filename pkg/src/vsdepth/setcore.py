"""Subsets of [n] = {1,...,n} on the circular representation.

A PointSet is an immutable characteristic bitmask over a universe of at
most 63 points, so all set algebra is single-word arithmetic.  Bit i-1 of
``mask`` holds membership of point i.  The canonical ordering everywhere
is colexicographic, which for subsets of equal size coincides with the
numeric order of the masks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ElementOutOfRange, UniverseMismatch, UniverseOutOfRange

MAX_UNIVERSE = 63


def _check_universe(n: int) -> None:
    if not 1 <= n <= MAX_UNIVERSE:
        raise UniverseOutOfRange(f"universe size {n} not in 1..{MAX_UNIVERSE}")


@dataclass(frozen=True)
class PointSet:
    """A subset of [n], stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        _check_universe(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ElementOutOfRange(
                f"mask {self.mask:#x} has members outside 1..{self.n}"
            )

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def __contains__(self, point: int) -> bool:
        return 1 <= point <= self.n and bool(self.mask >> (point - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.size

    def _same_universe(self, other: "PointSet") -> None:
        if self.n != other.n:
            raise UniverseMismatch(f"universe sizes differ: {self.n} vs {other.n}")

    def union(self, other: "PointSet") -> "PointSet":
        self._same_universe(other)
        return PointSet(self.n, self.mask | other.mask)

    def intersection(self, other: "PointSet") -> "PointSet":
        self._same_universe(other)
        return PointSet(self.n, self.mask & other.mask)

    def difference(self, other: "PointSet") -> "PointSet":
        self._same_universe(other)
        return PointSet(self.n, self.mask & ~other.mask)

    def complement(self) -> "PointSet":
        return PointSet(self.n, ~self.mask & ((1 << self.n) - 1))

    def issubset(self, other: "PointSet") -> bool:
        self._same_universe(other)
        return self.mask & ~other.mask == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def __str__(self) -> str:
        return format_set(self)


def make_set(n: int, elems: list[int] | tuple[int, ...]) -> PointSet:
    """Build a PointSet from explicit members; duplicates collapse."""
    _check_universe(n)
    mask = 0
    for e in elems:
        if not 1 <= e <= n:
            raise ElementOutOfRange(f"element {e} not in 1..{n}")
        mask |= 1 << (e - 1)
    return PointSet(n, mask)


def format_set(s: PointSet) -> str:
    """Canonical set literal: ``{a,b,c}`` ascending, no whitespace."""
    return "{" + ",".join(str(i) for i in s.members()) + "}"


def parse_set(text: str, n: int) -> PointSet:
    """Parse the canonical set literal into a PointSet over [n]."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ElementOutOfRange(f"malformed set literal {text!r}")
    body = text[1:-1]
    if not body:
        return PointSet(n, 0)
    try:
        elems = [int(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise ElementOutOfRange(f"malformed set literal {text!r}") from exc
    return make_set(n, elems)


def binomial(n: int, k: int) -> int:
    """Exact C(n,k); k > n gives 0."""
    if n < 0 or n > MAX_UNIVERSE:
        raise UniverseOutOfRange(f"n={n} not in 0..{MAX_UNIVERSE}")
    if k < 0:
        raise ElementOutOfRange(f"k={k} negative")
    if k > n:
        return 0
    return math.comb(n, k)


def circ_block(n: int, i: int, j: int) -> PointSet:
    """The clockwise run from i through j inclusive; wraps past n to 1."""
    _check_universe(n)
    for point in (i, j):
        if not 1 <= point <= n:
            raise ElementOutOfRange(f"point {point} not in 1..{n}")
    return PointSet(n, circ_mask(n, i, j))


def circ_mask(n: int, i: int, j: int) -> int:
    if i <= j:
        return ((1 << (j - i + 1)) - 1) << (i - 1)
    full = (1 << n) - 1
    return full & ~circ_mask(n, j + 1, i - 1) if j + 1 <= i - 1 else full


def sets_of_size(n: int, t: int) -> list[PointSet]:
    """All C(n,t) t-subsets of [n] in colexicographic order."""
    _check_universe(n)
    if not 0 <= t <= n:
        raise ElementOutOfRange(f"subset size {t} not in 0..{n}")
    return [PointSet(n, int(m)) for m in iter_size_masks(n, t)]


def iter_size_masks(n: int, t: int) -> Iterator[int]:
    """Masks of all t-subsets of [n] in colex (= numeric) order."""
    if t == 0:
        yield 0
        return
    m = (1 << t) - 1
    limit = 1 << n
    while m < limit:
        yield m
        # Gosper's hack: next mask with the same popcount.
        low = m & -m
        ripple = m + low
        m = ripple | ((m ^ ripple) >> (low.bit_length() + 1))


def size_masks_array(n: int, t: int) -> np.ndarray:
    """All t-subset masks of [n] as an int64 array, colex order.

    Built level-by-level: the first C(m,t) entries of the level-t array
    are exactly the t-subsets of [m], so each level is a concatenation of
    prefixes of the previous one shifted by a new top bit.
    """
    _check_universe(n)
    if not 0 <= t <= n:
        raise ElementOutOfRange(f"subset size {t} not in 0..{n}")
    level = np.zeros(1, dtype=np.int64)  # the single 0-subset
    for size in range(1, t + 1):
        parts = [
            level[: math.comb(m - 1, size - 1)] | np.int64(1 << (m - 1))
            for m in range(size, n + 1)
        ]
        level = np.concatenate(parts)
    return level


def popcount_array(masks: np.ndarray) -> np.ndarray:
    """Per-element popcount of an int64 mask array."""
    return np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
