"""Block structures of a set on the circular representation of [n].

For a nonempty A and a rational density p/q >= 1, the circle splits
uniquely into alternating blocks and gaps B_1,G_1,...,B_k,G_k where each
block starts at an element of A, gaps avoid A, and block lengths track
the density: writing s(P) = p*|P & A| - q*|P| for a prefix P of a block,
every proper prefix has s >= q and the full block lands in 0 <= s < q.
That makes each block a forced greedy run from its start: extend while
s >= q, stop the first time s drops below q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DensityOutOfRange, ElementOutOfRange, EmptySet
from .setcore import PointSet, _check_universe, circ_mask


@dataclass(frozen=True)
class Density:
    """Exact rational density p/q >= 1, stored in lowest terms."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p <= 0 or self.q <= 0:
            raise DensityOutOfRange(f"density {self.p}/{self.q} not positive")
        if self.p < self.q:
            raise DensityOutOfRange(f"density {self.p}/{self.q} below 1")
        g = math.gcd(self.p, self.q)
        if g != 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @classmethod
    def parse(cls, text: str) -> "Density":
        """Parse ``p/q`` or the integer shorthand ``c``."""
        if "/" in text:
            p_txt, q_txt = text.split("/", 1)
            return cls(int(p_txt), int(q_txt))
        return cls(int(text), 1)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}" if self.q != 1 else str(self.p)


@dataclass(frozen=True)
class CircBlock:
    """A clockwise run [start, end] on the circle, wrapping past n."""

    n: int
    start: int
    end: int

    def __post_init__(self) -> None:
        _check_universe(self.n)
        for point in (self.start, self.end):
            if not 1 <= point <= self.n:
                raise ElementOutOfRange(f"point {point} not in 1..{self.n}")

    @property
    def mask(self) -> int:
        return circ_mask(self.n, self.start, self.end)

    def to_set(self) -> PointSet:
        return PointSet(self.n, self.mask)

    @property
    def length(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class BlockStructure:
    """Alternating blocks/gaps partition of the circle for a set A.

    ``gaps[i]`` is the gap following ``blocks[i]``; empty gaps are kept as
    None so blocks and gaps stay index-aligned.
    """

    n: int
    set: PointSet
    density: Density
    blocks: tuple[CircBlock, ...]
    gaps: tuple[Optional[CircBlock], ...]

    def gap_set(self) -> PointSet:
        mask = 0
        for g in self.gaps:
            if g is not None:
                mask |= g.mask
        return PointSet(self.n, mask)


def _cyclic_succ(n: int, i: int) -> int:
    return i % n + 1


def _greedy_run(n: int, a_mask: int, p: int, q: int, start: int) -> int:
    """End point of the forced block run from ``start``; see module doc."""
    s = p - q
    pos = start
    for _ in range(n):
        if s < q:
            return pos
        pos = _cyclic_succ(n, pos)
        s += (p - q) if a_mask >> (pos - 1) & 1 else -q
    raise AssertionError("block run wrapped the whole circle")


def _next_member(n: int, a_mask: int, pos: int) -> int:
    """First element of A strictly clockwise after ``pos``."""
    cur = pos
    for _ in range(n):
        cur = _cyclic_succ(n, cur)
        if a_mask >> (cur - 1) & 1:
            return cur
    raise AssertionError("A is empty")


def _check_density_range(n: int, A: PointSet, delta: Density) -> None:
    if A.mask == 0:
        raise EmptySet("block structure requires a nonempty set")
    if delta.p * A.size > delta.q * (n - 1):
        raise DensityOutOfRange(
            f"density {delta} exceeds (n-1)/|A| for n={n}, |A|={A.size}"
        )


def _assemble(n: int, A: PointSet, delta: Density, starts: list[int]) -> Optional[BlockStructure]:
    """Lay greedy runs clockwise from the given starts; None if they clash."""
    p, q = delta.p, delta.q
    starts = sorted(starts)
    blocks: list[CircBlock] = []
    gaps: list[Optional[CircBlock]] = []
    covered = 0
    for idx, b in enumerate(starts):
        e = _greedy_run(n, A.mask, p, q, b)
        block = CircBlock(n, b, e)
        nxt = starts[(idx + 1) % len(starts)]
        after = _cyclic_succ(n, e)
        # the gap runs from just past the block end to just before the
        # next start; an empty gap means the next block is adjacent
        if after == nxt:
            gap = None
        else:
            gap = CircBlock(n, after, (nxt - 2) % n + 1)
        blocks.append(block)
        gaps.append(gap)
        covered |= block.mask | (gap.mask if gap else 0)
    if covered != (1 << n) - 1:
        return None
    bs = BlockStructure(n, A, delta, tuple(blocks), tuple(gaps))
    return bs if verify_block_structure(bs) else None


def block_structure(n: int, A: PointSet, delta: Density) -> BlockStructure:
    """The unique block structure of A on [n] with density delta.

    Follows the forced-run fixpoint: from a hypothesized start the run end
    determines the next start; a closed cycle of starts whose runs tile
    the circle is the structure, and the uniqueness lemma guarantees
    exactly one such cycle exists.
    """
    if A.n != n:
        raise ElementOutOfRange(f"set universe {A.n} != n={n}")
    _check_density_range(n, A, delta)
    p, q = delta.p, delta.q
    for a in A.members():
        # follow next-start pointers until they cycle
        path: list[int] = [a]
        seen = {a: 0}
        while True:
            end = _greedy_run(n, A.mask, p, q, path[-1])
            nxt = _next_member(n, A.mask, end)
            if nxt in seen:
                cycle = path[seen[nxt]:]
                break
            seen[nxt] = len(path)
            path.append(nxt)
        bs = _assemble(n, A, delta, cycle)
        if bs is not None:
            return bs
    raise AssertionError(f"no block structure found for A={A}, delta={delta}")


def block_structure_violation(bs: BlockStructure) -> Optional[str]:
    """First violated clause of the block-structure definition, or None.

    Tags: ``partition``, ``clause-i``, ``clause-ii``, ``clause-iii``,
    ``clause-iv``.
    """
    n = bs.n
    a_mask = bs.set.mask
    p, q = bs.density.p, bs.density.q
    if len(bs.blocks) == 0 or len(bs.blocks) != len(bs.gaps):
        return "partition"
    # blocks and gaps must alternate contiguously and tile the circle
    covered = 0
    for idx, block in enumerate(bs.blocks):
        gap = bs.gaps[idx]
        nxt = bs.blocks[(idx + 1) % len(bs.blocks)]
        after = _cyclic_succ(n, block.end)
        if gap is None:
            if after != nxt.start:
                return "partition"
        else:
            if gap.start != after or _cyclic_succ(n, gap.end) != nxt.start:
                return "partition"
        pieces = block.mask | (gap.mask if gap else 0)
        if covered & pieces:
            return "partition"
        covered |= pieces
    if covered != (1 << n) - 1:
        return "partition"
    for block in bs.blocks:
        if not a_mask >> (block.start - 1) & 1:
            return "clause-i"
    for gap in bs.gaps:
        if gap is not None and gap.mask & a_mask:
            return "clause-ii"
    for block in bs.blocks:
        size = block.length
        inter = (block.mask & a_mask).bit_count()
        if not (p * inter - q < q * size <= p * inter):
            return "clause-iii"
    for block in bs.blocks:
        # proper initial segments: s(P) >= q, i.e. q*(|P|+1) <= p*|P & A|
        pos = block.start
        length, inter = 0, 0
        for _ in range(block.length - 1):
            length += 1
            inter += a_mask >> (pos - 1) & 1
            if q * (length + 1) > p * inter:
                return "clause-iv"
            pos = _cyclic_succ(n, pos)
    return None


def verify_block_structure(bs: BlockStructure) -> bool:
    """True iff all four clauses and the partition property hold."""
    return block_structure_violation(bs) is None


def f_delta(n: int, A: PointSet, delta: Density) -> PointSet:
    """A together with all its gaps: the canonical interval top over A."""
    bs = block_structure(n, A, delta)
    return A | bs.gap_set()


def f_int_masks(n: int, c: int, masks: np.ndarray) -> np.ndarray:
    """Vectorized f_c for integer density c over an array of set masks.

    A point x lies in a gap iff every clockwise arc ending at x has
    negative weight, where members weigh c-1 and non-members -1 (a prefix
    of a block keeps its running weight nonnegative, while arcs ending
    inside a gap always dip below zero).  The maximum arc weight ending at
    each position is a circular Kadane scan, done in two passes; arcs
    longer than n only lose weight, so the doubled scan is exact.
    """
    if c < 2:
        raise DensityOutOfRange(f"vectorized f_c needs integer c >= 2, got {c}")
    best = np.full(masks.shape, np.int64(-4 * n), dtype=np.int64)
    gaps = np.zeros(masks.shape, dtype=np.int64)
    for step in range(2 * n):
        i = step % n
        w = np.where((masks >> np.int64(i)) & 1 == 1, np.int64(c - 1), np.int64(-1))
        best = np.maximum(w, best + w)
        if step >= n:
            gaps |= (best < 0).astype(np.int64) << np.int64(i)
    return masks | gaps
