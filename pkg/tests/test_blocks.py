import math

import pytest

from vsdepth.blocks import (
    BlockStructure,
    CircBlock,
    Density,
    block_structure,
    block_structure_violation,
    f_delta,
    f_int_masks,
    verify_block_structure,
)
from vsdepth.errors import DensityOutOfRange, EmptySet
from vsdepth.setcore import PointSet, make_set, size_masks_array

from oracles import all_block_structures


def blocks_of(bs):
    return [b.to_set().members() for b in bs.blocks]


def gaps_of(bs):
    return [g.to_set().members() if g else () for g in bs.gaps]


class TestDensity:
    def test_lowest_terms(self):
        assert Density(6, 4) == Density(3, 2)

    def test_parse(self):
        assert Density.parse("5/2") == Density(5, 2)
        assert Density.parse("3") == Density(3, 1)

    def test_below_one_rejected(self):
        with pytest.raises(DensityOutOfRange):
            Density(1, 2)


class TestBlockStructure:
    def test_two_blocks(self):
        bs = block_structure(8, make_set(8, [1, 5]), Density(3, 1))
        assert blocks_of(bs) == [(1, 2, 3), (5, 6, 7)]
        assert gaps_of(bs) == [(4,), (8,)]

    def test_merged_block(self):
        bs = block_structure(8, make_set(8, [1, 2]), Density(3, 1))
        assert blocks_of(bs) == [(1, 2, 3, 4, 5, 6)]
        assert gaps_of(bs) == [(7, 8)]

    def test_rational_density_empty_gap(self):
        bs = block_structure(6, make_set(6, [1, 3]), Density(5, 2))
        assert blocks_of(bs) == [(1, 2), (3, 4)]
        assert gaps_of(bs) == [(), (5, 6)]

    def test_wraparound(self):
        bs = block_structure(8, make_set(8, [2, 7]), Density(3, 1))
        assert blocks_of(bs) == [(2, 3, 4), (1, 7, 8)]
        assert gaps_of(bs) == [(5, 6), ()]

    def test_start_need_not_be_min_of_A(self):
        # the run from 8 swallows 1, so the single block starts at 8
        bs = block_structure(8, make_set(8, [1, 8]), Density(3, 1))
        assert blocks_of(bs) == [(1, 2, 3, 4, 5, 8)]

    def test_empty_set_rejected(self):
        with pytest.raises(EmptySet):
            block_structure(5, PointSet(5, 0), Density(2, 1))

    def test_density_too_large(self):
        with pytest.raises(DensityOutOfRange):
            block_structure(5, make_set(5, [1, 2]), Density(3, 1))

    def test_boundary_density_accepted(self):
        # delta = (n-1)/|A| is the closed upper end
        bs = block_structure(7, make_set(7, [1, 4]), Density(3, 1))
        assert verify_block_structure(bs)


class TestVerifier:
    def test_constructor_output_verifies(self):
        bs = block_structure(8, make_set(8, [1, 5]), Density(3, 1))
        assert block_structure_violation(bs) is None

    def test_clause_iii_violation(self):
        A = make_set(8, [1, 5])
        bs = BlockStructure(
            8, A, Density(3, 1),
            (CircBlock(8, 1, 4), CircBlock(8, 5, 7)),
            (None, CircBlock(8, 8, 8)),
        )
        assert block_structure_violation(bs) == "clause-iii"

    def test_clause_i_violation(self):
        A = make_set(8, [1, 2])
        bs = BlockStructure(
            8, A, Density(3, 1),
            (CircBlock(8, 1, 3), CircBlock(8, 4, 6)),
            (None, CircBlock(8, 7, 8)),
        )
        assert block_structure_violation(bs) == "clause-i"


class TestFDelta:
    @pytest.mark.parametrize(
        "n,A,p,q,expect",
        [
            (5, [1], 3, 1, (1, 4, 5)),
            (8, [2, 7], 3, 1, (2, 5, 6, 7)),
            (7, [1], 4, 1, (1, 5, 6, 7)),
        ],
    )
    def test_examples(self, n, A, p, q, expect):
        assert f_delta(n, make_set(n, A), Density(p, q)).members() == expect

    def test_contains_A_and_avoids_blocks(self):
        for n in range(3, 8):
            for mask in range(1, 1 << n):
                A = PointSet(n, mask)
                for p, q in ((2, 1), (3, 1), (5, 2)):
                    if p * A.size > q * (n - 1):
                        continue
                    bs = block_structure(n, A, Density(p, q))
                    f = f_delta(n, A, Density(p, q))
                    block_union = 0
                    for b in bs.blocks:
                        block_union |= b.mask
                    assert A.mask & ~f.mask == 0
                    assert (f.mask & ~A.mask) & block_union == 0


def rotate_mask(n, mask, r):
    full = (1 << n) - 1
    return ((mask << r) | (mask >> (n - r))) & full


class TestProperties:
    def test_uniqueness_small(self):
        # acceptance covers n <= 9; keep the unit version quick
        for n in range(2, 7):
            for mask in range(1, 1 << n):
                A = PointSet(n, mask)
                for q in (1, 2):
                    for p in range(q, q * (n - 1) // A.size + 1):
                        if math.gcd(p, q) != 1:
                            continue
                        delta = Density(p, q)
                        found = all_block_structures(n, A, delta)
                        assert len(found) == 1, (n, A, p, q)
                        assert found[0] == block_structure(n, A, delta)

    def test_right_size(self):
        for c in (2, 3, 4):
            for d in (1, 2, 3):
                n = c * d + c - 1
                for mask in size_masks_array(n, d):
                    A = PointSet(n, int(mask))
                    assert f_delta(n, A, Density(c, 1)).size == d + c - 1

    def test_rotation_equivariance(self):
        for n in (5, 7, 8):
            for mask in range(1, 1 << n):
                A = PointSet(n, mask)
                if 2 * A.size > n - 1:
                    continue
                f = f_delta(n, A, Density(2, 1)).mask
                for r in range(1, n):
                    rotated = f_delta(n, PointSet(n, rotate_mask(n, mask, r)), Density(2, 1))
                    assert rotated.mask == rotate_mask(n, f, r)


class TestVectorizedF:
    def test_agrees_with_scalar(self):
        for c in (2, 3, 4):
            for n in range(c, 10):
                for d in range(1, (n - 1) // c + 1):
                    masks = size_masks_array(n, d)
                    tops = f_int_masks(n, c, masks)
                    for m, t in zip(masks, tops):
                        A = PointSet(n, int(m))
                        assert int(t) == f_delta(n, A, Density(c, 1)).mask, (n, c, A)
