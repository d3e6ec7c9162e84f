"""Intervals of the Boolean lattice and interval-partition certificates.

A Certificate holds the explicit intervals of a partition of the poset of
all subsets of [n] of size >= d; everything not covered explicitly is
completed by trivial singleton intervals [C,C].  The verifier checks that
the explicit intervals are pairwise disjoint and tile every rank below
the claimed depth exactly once, which makes the trivial completion sound.

Explicit intervals are stored as parallel int64 mask arrays so that
certificates with millions of intervals stay cheap to build and check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, TextIO

import numpy as np

from .errors import (
    BottomTooSmall,
    CertificateFormatError,
    RefusesUnverified,
    TopTooSmall,
    UniverseMismatch,
)
from .setcore import (
    PointSet,
    format_set,
    parse_set,
    popcount_array,
    size_masks_array,
)

FILE_HEADER = "VSDEPTH-CERT v1"

# vectorized member enumeration is used for interval groups at least this
# large; tiny groups and very high-dimensional intervals go via plain ints
_VECTOR_GROUP_MIN = 64
_VECTOR_DIM_MAX = 16


@dataclass(frozen=True)
class Interval:
    """The subcube [bottom, top] = all C with bottom <= C <= top."""

    bottom: PointSet
    top: PointSet

    def __post_init__(self) -> None:
        if self.bottom.n != self.top.n:
            raise UniverseMismatch(
                f"interval ends in different universes: {self.bottom.n} vs {self.top.n}"
            )
        if self.bottom.mask & ~self.top.mask:
            raise BottomTooSmall(
                f"bottom {self.bottom} not contained in top {self.top}"
            )

    @property
    def n(self) -> int:
        return self.bottom.n

    @property
    def dimension(self) -> int:
        return self.top.size - self.bottom.size


def covers(iv: Interval, C: PointSet) -> bool:
    """True iff bottom <= C <= top."""
    if C.n != iv.n:
        raise UniverseMismatch(f"universe sizes differ: {iv.n} vs {C.n}")
    return iv.bottom.mask & ~C.mask == 0 and C.mask & ~iv.top.mask == 0


def disjoint(i1: Interval, i2: Interval) -> bool:
    """True iff the subcubes share no set.

    Two intervals overlap exactly when the union of the bottoms fits
    inside the intersection of the tops (that union is then a common
    member), so the test is O(1).
    """
    if i1.n != i2.n:
        raise UniverseMismatch(f"universe sizes differ: {i1.n} vs {i2.n}")
    both = i1.bottom.mask | i2.bottom.mask
    return bool(both & ~(i1.top.mask & i2.top.mask))


@dataclass
class Certificate:
    """An interval partition of the rank >= d subsets of [n].

    ``claimed_depth`` is the k being certified: every explicit top has at
    least k points and ranks d..k-1 are covered exactly once, so the
    implied full partition has minimum top size k.
    """

    universe_size: int
    min_generator_size: int
    claimed_depth: int
    bottom_masks: np.ndarray
    top_masks: np.ndarray
    trivial_completion: bool = True

    @classmethod
    def from_arrays(
        cls, n: int, d: int, k: int, bottoms: np.ndarray, tops: np.ndarray
    ) -> "Certificate":
        bottoms = np.asarray(bottoms, dtype=np.int64)
        tops = np.asarray(tops, dtype=np.int64)
        order = np.lexsort((tops, bottoms))
        return cls(n, d, k, bottoms[order], tops[order])

    @property
    def num_explicit(self) -> int:
        return len(self.bottom_masks)

    def iter_intervals(self) -> Iterator[Interval]:
        n = self.universe_size
        for b, t in zip(self.bottom_masks, self.top_masks):
            yield Interval(PointSet(n, int(b)), PointSet(n, int(t)))

    @property
    def explicit_intervals(self) -> list[Interval]:
        return list(self.iter_intervals())


def new_certificate(n: int, d: int, k: int, intervals: list[Interval]) -> Certificate:
    """Certificate from explicit intervals; bottoms >= d, tops >= k."""
    for iv in intervals:
        if iv.n != n:
            raise UniverseMismatch(f"interval universe {iv.n} != n={n}")
        if iv.bottom.size < d:
            raise BottomTooSmall(f"bottom {iv.bottom} smaller than d={d}")
        if iv.top.size < k:
            raise TopTooSmall(f"top {iv.top} smaller than k={k}")
    bottoms = np.array([iv.bottom.mask for iv in intervals], dtype=np.int64)
    tops = np.array([iv.top.mask for iv in intervals], dtype=np.int64)
    return Certificate.from_arrays(n, d, k, bottoms, tops)


@dataclass
class VerifyReport:
    valid: bool
    achieved_depth: Optional[int]
    first_violation: Optional[tuple] = None
    rank_coverage: dict[int, int] = field(default_factory=dict)


def _enumerate_group(bottoms: np.ndarray, free: np.ndarray, dim: int) -> list[np.ndarray]:
    """Member masks of intervals sharing dimension ``dim``, vectorized.

    Peels the free bits lowest-first, then emits one array per subset
    pattern of the peeled bits.
    """
    bits = []
    f = free.copy()
    for _ in range(dim):
        low = f & -f
        bits.append(low)
        f ^= low
    out = []
    for pattern in range(1 << dim):
        member = bottoms.copy()
        for j in range(dim):
            if pattern >> j & 1:
                member |= bits[j]
        out.append(member)
    return out


def _all_members(bottoms: np.ndarray, tops: np.ndarray) -> np.ndarray:
    """Every set covered by any interval, with multiplicity."""
    free = tops & ~bottoms
    dims = popcount_array(free)
    chunks: list[np.ndarray] = []
    for dim in np.unique(dims):
        sel = dims == dim
        count = int(sel.sum())
        if dim == 0:
            chunks.append(bottoms[sel])
        elif count >= _VECTOR_GROUP_MIN and dim <= _VECTOR_DIM_MAX:
            chunks.extend(_enumerate_group(bottoms[sel], free[sel], int(dim)))
        else:
            members = []
            for b, fr in zip(bottoms[sel], free[sel]):
                b, fr = int(b), int(fr)
                sub = fr
                while True:
                    members.append(b | sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & fr
            chunks.append(np.array(members, dtype=np.int64))
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def verify_certificate(cert: Certificate) -> VerifyReport:
    """Check the partition property and report the achieved depth.

    Valid iff the explicit intervals are pairwise disjoint, every set of
    size d..k-1 is covered exactly once, and every explicit top has at
    least k points.
    """
    n = cert.universe_size
    d = cert.min_generator_size
    k = cert.claimed_depth
    bottoms, tops = cert.bottom_masks, cert.top_masks

    if cert.num_explicit == 0:
        # purely trivial certificate: sound iff there is nothing below k
        coverage = {t: 0 for t in range(d, k)}
        if k > d:
            return VerifyReport(
                False, d, ("gap-at-rank", d, _find_missing(n, d, np.empty(0, np.int64))),
                coverage,
            )
        return VerifyReport(True, k, None, coverage)

    if bool(np.any(bottoms & ~tops)):
        idx = int(np.argmax((bottoms & ~tops) != 0))
        return VerifyReport(
            False, None,
            ("bottom-not-in-top", PointSet(n, int(bottoms[idx]))),
        )
    bot_sizes = popcount_array(bottoms)
    top_sizes = popcount_array(tops)
    if bool(np.any(bot_sizes < d)):
        idx = int(np.argmax(bot_sizes < d))
        return VerifyReport(
            False, None, ("bottom-too-small", PointSet(n, int(bottoms[idx])))
        )
    if bool(np.any(top_sizes < k)):
        idx = int(np.argmax(top_sizes < k))
        return VerifyReport(
            False, None, ("top-too-small", PointSet(n, int(tops[idx])))
        )

    members = np.sort(_all_members(bottoms, tops))
    if len(members) > 1 and bool(np.any(members[1:] == members[:-1])):
        idx = int(np.argmax(members[1:] == members[:-1]))
        return VerifyReport(
            False, None, ("overlap", PointSet(n, int(members[idx])))
        )

    ranks = popcount_array(members)
    counts = np.bincount(ranks, minlength=n + 1)
    coverage = {t: int(counts[t]) for t in range(d, k)}
    for t in range(d, k):
        want = math.comb(n, t)
        if counts[t] != want:
            missing = _find_missing(n, t, members[ranks == t])
            return VerifyReport(False, None, ("gap-at-rank", t, missing), coverage)

    achieved = min(k, int(top_sizes.min()))
    return VerifyReport(True, achieved, None, coverage)


def _find_missing(n: int, t: int, covered: np.ndarray) -> PointSet:
    everything = size_masks_array(n, t)
    gap = np.setdiff1d(everything, covered)
    return PointSet(n, int(gap[0]))


def _monomial(mask: int, n: int) -> str:
    return "".join(f"x{i}" for i in PointSet(n, mask).members()) or "1"


def render_stanley(cert: Certificate) -> str:
    """The decomposition as a direct sum of monomial-times-subring summands."""
    report = verify_certificate(cert)
    if not report.valid:
        raise RefusesUnverified(f"certificate does not verify: {report.first_violation}")
    n = cert.universe_size
    lines = []
    for b, t in zip(cert.bottom_masks, cert.top_masks):
        variables = ",".join(f"x{i}" for i in PointSet(n, int(t)).members())
        lines.append(f"{_monomial(int(b), n)}·K[{variables}]")
    members = _all_members(cert.bottom_masks, cert.top_masks)
    counts = np.bincount(popcount_array(members), minlength=n + 1)
    trivia = []
    for t in range(cert.min_generator_size, n + 1):
        rest = math.comb(n, t) - int(counts[t])
        if rest:
            trivia.append(f"rank {t}: {rest}")
    lines.append("trivial summands: " + ("; ".join(trivia) if trivia else "none"))
    return "\n".join(lines)


def format_certificate(cert: Certificate) -> str:
    """Canonical line-oriented certificate text (round-trip stable)."""
    n = cert.universe_size
    lines = [
        FILE_HEADER,
        f"n={n} d={cert.min_generator_size} k={cert.claimed_depth}",
    ]
    order = np.lexsort((cert.top_masks, cert.bottom_masks))
    for i in order:
        b = format_set(PointSet(n, int(cert.bottom_masks[i])))
        t = format_set(PointSet(n, int(cert.top_masks[i])))
        lines.append(f"interval {b} {t}")
    lines.append("trivial-completion")
    return "\n".join(lines) + "\n"


def write_certificate(cert: Certificate, fh: TextIO) -> None:
    fh.write(format_certificate(cert))


def parse_certificate(text: str) -> Certificate:
    lines = text.splitlines()
    if len(lines) < 3 or lines[0] != FILE_HEADER:
        raise CertificateFormatError("missing VSDEPTH-CERT v1 header")
    try:
        fields = dict(part.split("=", 1) for part in lines[1].split())
        n, d, k = int(fields["n"]), int(fields["d"]), int(fields["k"])
    except (ValueError, KeyError) as exc:
        raise CertificateFormatError(f"bad parameter line: {lines[1]!r}") from exc
    if lines[-1] != "trivial-completion":
        raise CertificateFormatError("missing trivial-completion terminator")
    bottoms, tops = [], []
    for line in lines[2:-1]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "interval":
            raise CertificateFormatError(f"bad interval line: {line!r}")
        bottoms.append(parse_set(parts[1], n).mask)
        tops.append(parse_set(parts[2], n).mask)
    cert = Certificate.from_arrays(
        n, d, k,
        np.array(bottoms, dtype=np.int64),
        np.array(tops, dtype=np.int64),
    )
    return cert
