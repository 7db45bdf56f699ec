"""Certified enclosure of c = sum_{d>=1} Lambda(d)/(d(d+1)).

All terms are nonnegative, so the truncated sum is a rigorous lower
bound once a small subtractive rounding slack is applied. The tail above
the truncation depth D is bounded by partial summation against the
classical explicit linear bound

    sum_{n<=t} Lambda(n) <= A*t   for all t > 0,   A = 1.03883,

which gives sum_{d>D} Lambda(d)/(d(d+1)) <= sum_{d>D} Lambda(d)/d^2
<= 2*A/D. The crude 2A/D form is kept on purpose: it is auditable by
hand, and the enclosure widths it yields are what the callers budget for.
"""

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import kernels
from .accum import exact_sum, neumaier
from .arith import SEGMENT_SIZE, _power_entries, mangoldt_segments, sieve_primes

CHEBYSHEV_LINEAR_BOUND = 1.03883

_TAIL_TAG = "partial summation vs psi_cheb(t) <= 1.03883*t: tail <= 2A/depth"


@dataclass(frozen=True)
class Enclosure:
    """Interval [lo, hi] certified to contain the constant c."""

    lo: float
    hi: float
    depth: int
    tail_bound_used: str = _TAIL_TAG

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def tail_bound(depth: int) -> float:
    """Rigorous upper bound 2A/depth on the tail beyond the given depth."""
    if depth < 2:
        raise ValueError("tail_bound requires depth >= 2")
    return 2.0 * CHEBYSHEV_LINEAR_BOUND / depth


def constant_enclosure(depth: int, segment_size: int = SEGMENT_SIZE) -> Enclosure:
    """Enclosure from the partial sum to `depth` plus the certified tail.

    lo is the compensated partial sum minus a slack of
    (number of terms) * eps * (partial sum), keeping it a true lower
    bound in binary64; hi = lo + tail_bound(depth).
    """
    if depth < 2:
        raise ValueError("constant_enclosure requires depth >= 2")
    base = sieve_primes(math.isqrt(depth))
    pieces = []
    n_terms = 0
    for seg_lo in range(2, depth + 1, segment_size):
        size = min(segment_size, depth + 1 - seg_lo)
        seg_sum, seg_count = kernels.constant_prime_segment(seg_lo, size, base)
        pieces.append(seg_sum)
        n_terms += seg_count
    for n, p, _k in _power_entries(base, 2, depth + 1):
        pieces.append(math.log(p) / (n * (n + 1.0)))
        n_terms += 1
    partial = neumaier(pieces)
    slack = n_terms * sys.float_info.epsilon * partial
    lo = partial - slack
    return Enclosure(lo=lo, hi=lo + tail_bound(depth), depth=depth)


def partial_sum_range(
    d_lo: int, d_hi: int, segment_size: int = SEGMENT_SIZE
) -> float:
    """sum_{d_lo < d <= d_hi} Lambda(d)/(d(d+1)), for tail-domination checks."""
    if not 1 <= d_lo < d_hi:
        raise ValueError("need 1 <= d_lo < d_hi")
    pieces = []
    for seg_lo, lam in mangoldt_segments(d_lo + 1, d_hi, segment_size):
        n = np.arange(seg_lo, seg_lo + lam.size, dtype=np.float64)
        pieces.append(float(np.sum(lam / (n * (n + 1.0)))))
    return exact_sum(pieces)
