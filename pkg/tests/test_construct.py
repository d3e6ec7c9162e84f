import itertools

import numpy as np
import pytest

from vsdepth.construct import (
    bounds,
    compose_plus1,
    construct_c2,
    construct_c3,
    construct_c4,
    construct_general,
    full_ring_certificate,
    has_covered_superset,
    uncovered_sets,
    veronese_intervals,
)
from vsdepth.errors import BadParameters, DepthMismatch
from vsdepth.intervals import verify_certificate
from vsdepth.setcore import binomial, format_set, make_set


class TestVeroneseIntervals:
    def test_n5_d1(self):
        ivs = veronese_intervals(5, 1, 3)
        got = [(format_set(i.bottom), format_set(i.top)) for i in ivs]
        assert got == [
            ("{1}", "{1,4,5}"),
            ("{2}", "{1,2,5}"),
            ("{3}", "{1,2,3}"),
            ("{4}", "{2,3,4}"),
            ("{5}", "{3,4,5}"),
        ]

    def test_n3_d1(self):
        ivs = veronese_intervals(3, 1, 2)
        got = [(format_set(i.bottom), format_set(i.top)) for i in ivs]
        assert got == [("{1}", "{1,3}"), ("{2}", "{1,2}"), ("{3}", "{2,3}")]

    def test_n7_d1_tops(self):
        ivs = veronese_intervals(7, 1, 4)
        assert format_set(ivs[0].top) == "{1,5,6,7}"
        assert format_set(ivs[2].top) == "{1,2,3,7}"
        assert all(i.top.size == 4 for i in ivs)

    def test_bad_params(self):
        with pytest.raises(BadParameters):
            veronese_intervals(6, 1, 3)

    def test_counting_identity(self):
        # (c-1) C(n,d) = C(n,d+1) whenever n = cd+c-1
        for c in (2, 3, 4):
            for d in range(1, 13):
                n = c * d + c - 1
                if n > 63:
                    break
                assert (c - 1) * binomial(n, d) == binomial(n, d + 1)

    def test_rank_dplus1_tiled(self):
        # each (d+1)-set inside exactly one interval
        for c, d in ((2, 2), (3, 2), (4, 2)):
            n = c * d + c - 1
            ivs = veronese_intervals(n, d, c)
            hits = {}
            for iv in ivs:
                free = iv.top.mask & ~iv.bottom.mask
                for bit in range(n):
                    if (free >> bit) & 1:
                        m = iv.bottom.mask | (1 << bit)
                        hits[m] = hits.get(m, 0) + 1
            assert len(hits) == binomial(n, d + 1)
            assert set(hits.values()) == {1}


class TestUncovered:
    def test_n5_rank3(self):
        got = [format_set(s) for s in uncovered_sets(5, 1, 3, 3)]
        assert got == ["{1,2,4}", "{1,3,4}", "{1,3,5}", "{2,3,5}", "{2,4,5}"]

    def test_n5_rank2_empty(self):
        assert uncovered_sets(5, 1, 3, 2) == []

    def test_n7_counts(self):
        assert len(uncovered_sets(7, 1, 4, 3)) == 14
        assert len(uncovered_sets(7, 1, 4, 4)) == 28

    def test_against_definition(self):
        # covered iff A subset of D subset of f_c(A) for some d-set A
        for c, d in ((3, 1), (4, 1), (3, 2)):
            n = c * d + c - 1
            ivs = veronese_intervals(n, d, c)
            for t in range(d + 1, d + c):
                expected = set()
                for members in itertools.combinations(range(1, n + 1), t):
                    D = make_set(n, members)
                    if not any(
                        iv.bottom.issubset(D) and D.issubset(iv.top)
                        for iv in ivs
                    ):
                        expected.add(D.mask)
                got = {s.mask for s in uncovered_sets(n, d, c, t)}
                assert got == expected

    def test_rank_range_enforced(self):
        with pytest.raises(BadParameters):
            uncovered_sets(5, 1, 3, 4)


class TestHasCoveredSuperset:
    def test_covered_triple_via_top(self):
        assert has_covered_superset(make_set(7, [1, 2, 3]), 7, 1, 4)

    def test_covered_pair(self):
        assert has_covered_superset(make_set(5, [1, 5]), 5, 1, 3)

    def test_uncovered_triples_have_none(self):
        # uncovered top-rank sets have no room for a covered superset
        for s in uncovered_sets(5, 1, 3, 3):
            assert not has_covered_superset(s, 5, 1, 3)


class TestBaseConstructions:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_c2(self, d):
        cert = construct_c2(d)
        assert cert.universe_size == 2 * d + 1
        report = verify_certificate(cert)
        assert report.valid and report.achieved_depth == d + 1

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_c3(self, d):
        cert = construct_c3(d)
        assert cert.universe_size == 3 * d + 2
        report = verify_certificate(cert)
        assert report.valid and report.achieved_depth == d + 2

    @pytest.mark.parametrize("d", [1, 2])
    def test_c4(self, d):
        cert = construct_c4(d)
        assert cert.universe_size == 4 * d + 3
        report = verify_certificate(cert)
        assert report.valid and report.achieved_depth == d + 3

    def test_c2_is_bijection_on_ranks(self):
        cert = construct_c2(3)
        assert cert.num_explicit == binomial(7, 3) == binomial(7, 4)

    def test_c4_explicit_count(self):
        cert = construct_c4(1)
        # 7 cube intervals plus the matched leftover pairs
        assert cert.num_explicit == binomial(7, 1) + 14

    def test_bad_degree(self):
        for builder in (construct_c2, construct_c3, construct_c4):
            with pytest.raises(BadParameters):
                builder(0)


class TestCompose:
    def test_full_ring(self):
        cert = full_ring_certificate(3)
        report = verify_certificate(cert)
        assert report.valid and report.achieved_depth == 3

    def test_three_zero_plus_three_one(self):
        composed = compose_plus1(full_ring_certificate(3, 2), construct_c2(1))
        assert composed.universe_size == 4
        assert composed.min_generator_size == 1
        report = verify_certificate(composed)
        assert report.valid and report.achieved_depth == 2
        pairs = {
            (format_set(i.bottom), format_set(i.top))
            for i in composed.explicit_intervals
        }
        assert ("{4}", "{1,2,3,4}") in pairs

    def test_depth_precondition(self):
        # p1 one short of p2's depth is required, deeper p2 must fail
        shallow = full_ring_certificate(5, 1)
        with pytest.raises(DepthMismatch):
            compose_plus1(shallow, construct_c3(1))


class TestConstructGeneral:
    def test_examples(self):
        for n, d, depth in ((7, 2, 3), ((9), 1, 4), (5, 1, 3), (11, 2, 5)):
            cert = construct_general(n, d)
            report = verify_certificate(cert)
            assert report.valid and report.achieved_depth >= depth

    def test_matches_base_cases(self):
        assert construct_general(5, 1).claimed_depth == construct_c3(1).claimed_depth

    @pytest.mark.parametrize("n", range(1, 13))
    def test_target_depth_all_small(self, n):
        for d in range(1, n + 1):
            target = d + min((n + 1) // (d + 1), 4) - 1
            cert = construct_general(n, d)
            report = verify_certificate(cert)
            assert report.valid, (n, d, report.first_violation)
            assert report.achieved_depth >= target

    def test_bad_params(self):
        with pytest.raises(BadParameters):
            construct_general(3, 4)


class TestBounds:
    def test_examples(self):
        b = bounds(11, 3)
        assert (b.lower_certified, b.upper, b.known_exact) == (5, 5, 5)
        b = bounds(24, 4)
        assert (b.lower_certified, b.upper, b.known_exact) == (7, 8, None)
        assert b.conjectured == 8
        b = bounds(4, 2)
        assert (b.lower_certified, b.upper, b.known_exact) == (2, 2, 2)

    @pytest.mark.parametrize("n", range(1, 21))
    def test_degree_one_halving(self, n):
        b = bounds(n, 1)
        assert b.known_exact == (n + 1) // 2

    def test_ordering_invariants(self):
        for n in range(1, 41):
            for d in range(1, n + 1):
                b = bounds(n, d)
                assert d <= b.lower_certified <= b.upper
                if b.known_exact is not None:
                    assert b.lower_certified <= b.known_exact <= b.upper

    def test_bad_params(self):
        with pytest.raises(BadParameters):
            bounds(2, 3)
