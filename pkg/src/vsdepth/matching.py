"""Bipartite matching and Hall-condition diagnostics.

The augmenting-path matcher is deterministic: left vertices are processed
in listed order and adjacency lists are scanned in listed order, so a
given graph always yields the same matching.

For the huge containment graphs used by the constructions there is also
``chain_successor_bits``: the classic parenthesis rule that matches each
set to the superset obtained by adding the leftmost unmatched opening
position.  It is injective on sets of a fixed size, so wherever every
superset of an eligible set is an eligible target it gives a complete
matching without any search.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegreePreconditionViolated, MatchingFailed
from .setcore import PointSet


@dataclass
class BipartiteGraph:
    left: list[PointSet]
    right: list[PointSet]
    adjacency: list[list[int]]

    def __post_init__(self) -> None:
        if len(self.adjacency) != len(self.left):
            raise ValueError("adjacency must have one row per left vertex")
        for row in self.adjacency:
            if len(set(row)) != len(row):
                raise ValueError("duplicate edges in adjacency row")
            for j in row:
                if not 0 <= j < len(self.right):
                    raise ValueError(f"right index {j} out of range")


@dataclass
class Matching:
    pairing: dict[int, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.pairing)


def containment_graph(left: list[PointSet], right: list[PointSet]) -> BipartiteGraph:
    """Edges from each left set to the right sets containing it."""
    adjacency = [
        [j for j, t in enumerate(right) if s.mask & ~t.mask == 0]
        for s in left
    ]
    return BipartiteGraph(left, right, adjacency)


def max_matching(g: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching via deterministic augmenting paths.

    A greedy first-free-neighbor pass seeds the matching, then the
    remaining left vertices are augmented in order; both passes scan in
    listed order, so the result is reproducible.
    """
    import sys

    match_left: dict[int, int] = {}
    match_right: dict[int, int] = {}

    for u in range(len(g.left)):
        for v in g.adjacency[u]:
            if v not in match_right:
                match_left[u] = v
                match_right[v] = u
                break

    def augment(u: int, seen: set[int]) -> bool:
        for v in g.adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    limit = 2 * len(g.left) + 100
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)
    for u in range(len(g.left)):
        if u not in match_left:
            augment(u, set())
    return Matching(match_left)


def hall_witness(g: BipartiteGraph) -> Optional[set[int]]:
    """A set S of left indices with |N(S)| < |S|, or None if none exists.

    None exactly when a complete matching from the left side exists; the
    witness is extracted from the alternating-reachability structure of a
    maximum matching (Koenig duality).
    """
    m = max_matching(g)
    unmatched = [u for u in range(len(g.left)) if u not in m.pairing]
    if not unmatched:
        return None
    match_right = {v: u for u, v in m.pairing.items()}
    # alternating BFS from one unmatched left vertex: unmatched edges
    # rightward, matching edges leftward
    witness = {unmatched[0]}
    frontier = [unmatched[0]]
    reached_right: set[int] = set()
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.adjacency[u]:
                if v in reached_right:
                    continue
                reached_right.add(v)
                # v must be matched, else the path would augment
                partner = match_right[v]
                if partner not in witness:
                    witness.add(partner)
                    nxt.append(partner)
        frontier = nxt
    return witness


def complete_matching_regular(g: BipartiteGraph, t: int) -> Matching:
    """Complete matching from the left side of a left-t-regular graph.

    Requires every left degree to equal t >= 1 and every right degree to
    be at most t; Hall's condition then holds automatically.
    """
    if t < 1:
        raise DegreePreconditionViolated(f"t={t} must be >= 1")
    right_deg = [0] * len(g.right)
    for u, row in enumerate(g.adjacency):
        if len(row) != t:
            raise DegreePreconditionViolated(
                f"left vertex {u} has degree {len(row)}, expected {t}"
            )
        for v in row:
            right_deg[v] += 1
    for v, deg in enumerate(right_deg):
        if deg > t:
            raise DegreePreconditionViolated(
                f"right vertex {v} has degree {deg} > t={t}"
            )
    m = max_matching(g)
    if m.size != len(g.left):
        raise MatchingFailed(
            "regular graph admitted no complete matching; this contradicts "
            "Hall's condition and indicates a bug"
        )
    return m


def chain_successor_bits(masks: np.ndarray, n: int) -> np.ndarray:
    """Per-mask 0-based position of the leftmost unmatched opening point.

    Read position i as ')' when i is a member and '(' otherwise, match
    parentheses, and report the leftmost unmatched '('.  Adding that
    position to the set is injective over masks of a fixed size.  Raises
    if some mask has no unmatched opening position (only possible when
    members are at least half the universe).
    """
    masks = np.asarray(masks, dtype=np.int64)
    unmatched_close = np.zeros(masks.shape, dtype=np.int32)
    pos = np.full(masks.shape, -1, dtype=np.int32)
    for i in range(n - 1, -1, -1):
        member = ((masks >> np.int64(i)) & 1).astype(bool)
        pos = np.where(~member & (unmatched_close == 0), np.int32(i), pos)
        unmatched_close = np.where(
            member, unmatched_close + 1, np.maximum(unmatched_close - 1, 0)
        )
    if bool(np.any(pos < 0)):
        raise MatchingFailed("a set has no unmatched opening position")
    return pos
