import math

import pytest

from floorsum.arith import chebyshev_max_ratio
from floorsum.constant import (
    CHEBYSHEV_LINEAR_BOUND,
    constant_enclosure,
    partial_sum_range,
    tail_bound,
)


def partial_sum_oracle(depth: int) -> float:
    """Direct enumeration of Lambda(d)/(d(d+1)) over prime powers <= depth."""
    terms = []
    for p in range(2, depth + 1):
        if all(p % q for q in range(2, int(math.isqrt(p)) + 1)):
            pk = p
            while pk <= depth:
                terms.append(math.log(p) / (pk * (pk + 1)))
                pk *= p
    return math.fsum(terms)


class TestEnclosure:
    def test_depth_2_single_term(self):
        enc = constant_enclosure(2)
        assert abs(enc.lo - math.log(2) / 6) < 1e-14
        assert enc.hi == enc.lo + tail_bound(2)

    def test_depth_10_against_oracle(self):
        enc = constant_enclosure(10)
        assert abs(enc.lo - partial_sum_oracle(10)) < 1e-13

    def test_depth_1000_against_oracle(self):
        enc = constant_enclosure(1000)
        oracle = partial_sum_oracle(1000)
        assert enc.lo <= oracle <= enc.lo + tail_bound(1000)
        assert abs(enc.lo - oracle) < 1e-11

    def test_invalid_depth(self):
        with pytest.raises(ValueError):
            constant_enclosure(1)
        with pytest.raises(ValueError):
            tail_bound(1)

    def test_lo_monotone_and_nested(self, enclosures):
        depths = sorted(enclosures)
        for lo_d, hi_d in zip(depths, depths[1:]):
            a, b = enclosures[lo_d], enclosures[hi_d]
            assert b.lo >= a.lo
            assert b.hi <= a.hi
            assert a.overlaps(b)

    def test_segment_size_invariance(self):
        a = constant_enclosure(10**5)
        b = constant_enclosure(10**5, segment_size=1 << 12)
        assert abs(a.lo - b.lo) < 1e-14 and a.hi - a.lo == b.hi - b.lo


class TestTailBound:
    def test_formula_value(self):
        assert tail_bound(10**9) == 2 * CHEBYSHEV_LINEAR_BOUND / 10**9
        assert tail_bound(10**9) <= 2.07766e-9 * (1 + 1e-12)

    def test_halving(self):
        for depth in (10, 10**4, 10**7, 123456):
            assert tail_bound(2 * depth) == tail_bound(depth) / 2

    def test_dominates_measured_tail_segments(self):
        # the certified bound must exceed the actual tail it covers
        for depth in (10**4, 10**5, 10**6):
            measured = partial_sum_range(depth, 10 * depth)
            assert measured < tail_bound(depth)

    def test_tail_to_1e7_below_bound_at_1e4(self):
        assert partial_sum_range(10**4, 10**7) < tail_bound(10**4)


class TestChebyshevLinearBound:
    def test_holds_to_1e8(self):
        # belt-and-braces numeric check of the classical bound used in
        # the tail certificate; the true sup (near t = 113) is close
        ratio = chebyshev_max_ratio(10**8)
        assert ratio <= CHEBYSHEV_LINEAR_BOUND
        assert ratio > 1.0388  # the bound is nearly attained

    def test_small_range_against_oracle(self):
        # the max of psi(t)/t on [1, 200] sits at the classical t = 113
        from floorsum.arith import mangoldt_single

        running = 0.0
        best = 0.0
        arg = 0
        for t in range(1, 201):
            running = math.fsum([running, mangoldt_single(t)])
            if running / t > best:
                best = running / t
                arg = t
        assert arg == 113
        assert chebyshev_max_ratio(200) == pytest.approx(best, rel=1e-12)
