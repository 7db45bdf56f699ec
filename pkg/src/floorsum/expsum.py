"""Direct evaluation of the triple exponential sum

    S_delta = sum_{h~H} sum_{m~M} sum_{n~N} a_{h,m} b_n
              e( X * (M^beta N^gamma / H^alpha) * h^alpha / (m^beta n^gamma + delta) )

(h ~ H means the dyadic range H < h <= 2H, which holds exactly H
integers), brute-force proximity counts

    #{(m, m~, n, n~) : |(m/m~)^alpha - (n/n~)^beta| <= Delta},

and the two closed bound formulas the sum is compared against. Implied
constants and the x^eps factors of those formulas are set to 1: ratios
are reported and checked for boundedness, never asserted against a
theoretical constant.
"""

import math
import statistics
import warnings
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .exponents import ExponentPair
from .prng import SplitMix64

PROXIMITY_GUARD = 10**9  # max (M*N)^2 tuples for exhaustive enumeration
DEGENERACY_REL = 1e-12  # threshold band Delta*(1 +/- this) must agree


@dataclass(frozen=True)
class ExpSumInstance:
    X: float
    H: int
    M: int
    N: int
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    delta: float = 0.0
    coefficient_seed: Optional[int] = None  # None: all-ones coefficients

    def __post_init__(self):
        if self.X <= 0:
            raise ValueError("X must be positive")
        if min(self.H, self.M, self.N) < 1:
            raise ValueError("H, M, N must be >= 1")
        if min(self.alpha, self.beta, self.gamma) <= 0:
            raise ValueError("alpha, beta, gamma must be positive")

    @property
    def h_feasible(self) -> bool:
        """The bound formulas assume H <= M^(beta-1) N^gamma."""
        return self.H <= self.M ** (self.beta - 1.0) * self.N ** self.gamma

    def term_count(self) -> int:
        return self.H * self.M * self.N


def coefficient_arrays(inst: ExpSumInstance) -> Tuple[np.ndarray, np.ndarray]:
    """(a[h, m], b[n]) coefficient arrays.

    Seeded instances draw unimodular e(theta): theta values come from one
    splitmix64 stream, a-entries first in (h, m) row-major order over the
    dyadic ranges, then the b-entries over n.
    """
    if inst.coefficient_seed is None:
        return (
            np.ones((inst.H, inst.M), dtype=np.complex128),
            np.ones(inst.N, dtype=np.complex128),
        )
    rng = SplitMix64(inst.coefficient_seed)
    theta_a = np.array(
        [rng.next_float() for _ in range(inst.H * inst.M)], dtype=np.float64
    ).reshape(inst.H, inst.M)
    theta_b = np.array(
        [rng.next_float() for _ in range(inst.N)], dtype=np.float64
    )
    return np.exp(2j * np.pi * theta_a), np.exp(2j * np.pi * theta_b)


def eval_s_delta(inst: ExpSumInstance) -> complex:
    """The triple sum by direct enumeration with compensated accumulation."""
    h = np.arange(inst.H + 1, 2 * inst.H + 1, dtype=np.float64)
    m = np.arange(inst.M + 1, 2 * inst.M + 1, dtype=np.float64)
    n = np.arange(inst.N + 1, 2 * inst.N + 1, dtype=np.float64)
    h_pow = h ** inst.alpha
    m_pow = m ** inst.beta
    n_pow = n ** inst.gamma
    den = m_pow[:, None] * n_pow[None, :] + inst.delta
    if np.any(den == 0.0):
        raise ValueError("delta makes m^beta * n^gamma + delta vanish")
    coef = inst.X * (inst.M ** inst.beta * inst.N ** inst.gamma) / inst.H ** inst.alpha
    a, b = coefficient_arrays(inst)
    return kernels.s_delta_triple(a, b, h_pow, m_pow, n_pow, coef, inst.delta)


def prop31_bound(
    inst: ExpSumInstance,
    pair: Optional[ExponentPair] = None,
    variant: int = 1,
) -> float:
    """Closed bound formulas (eps factors and implied constants set to 1).

    variant 1: (XHMN)^(1/2) + (HM)^(1/2) N + H M N^(1/2) + X^(-1/2) H M N.
    variant 2 replaces the first term by
    (X^k H^(2+k) M^(2+k) N^(1+k+l))^(1/(2+2k)) for an exponent pair (k, l).
    """
    X, H, M, N = inst.X, float(inst.H), float(inst.M), float(inst.N)
    common = H * M * math.sqrt(N) + math.sqrt(H * M) * N + H * M * N / math.sqrt(X)
    if variant == 1:
        return math.sqrt(X * H * M * N) + common
    if variant == 2:
        if pair is None:
            raise ValueError("variant 2 requires an exponent pair")
        k = float(pair.kappa)
        lam = float(pair.lam)
        lead = (X ** k * H ** (2 + k) * M ** (2 + k) * N ** (1 + k + lam)) ** (
            1.0 / (2.0 + 2.0 * k)
        )
        return lead + common
    raise ValueError("variant must be 1 or 2")


@dataclass(frozen=True)
class ProximityQuery:
    alpha: float
    beta: float
    M: int
    N: int
    Delta: float

    def __post_init__(self):
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("alpha and beta must be nonzero")
        if self.M < 1 or self.N < 1:
            raise ValueError("M and N must be >= 1")
        if self.Delta < 0:
            raise ValueError("Delta must be nonnegative")


class ProximityResult(NamedTuple):
    count: int
    count_lower: int  # at Delta * (1 - 1e-12)
    count_upper: int  # at Delta * (1 + 1e-12)

    @property
    def degenerate(self) -> bool:
        return self.count_lower != self.count_upper


def _ratio_arrays(q: ProximityQuery) -> Tuple[np.ndarray, np.ndarray]:
    m = np.arange(q.M + 1, 2 * q.M + 1, dtype=np.float64)
    n = np.arange(q.N + 1, 2 * q.N + 1, dtype=np.float64)
    r = (m[:, None] / m[None, :]) ** q.alpha
    s = (n[:, None] / n[None, :]) ** q.beta
    return r.ravel(), s.ravel()


def count_proximity_detailed(q: ProximityQuery) -> ProximityResult:
    """Exhaustive tuple count, with the thresholds Delta*(1 -/+ 1e-12)."""
    tuples = (q.M * q.N) ** 2
    if tuples > PROXIMITY_GUARD:
        raise ValueError(
            f"(M*N)^2 = {tuples} exceeds the brute-force guard {PROXIMITY_GUARD}"
        )
    r, s = _ratio_arrays(q)
    d = q.Delta
    lo, mid, hi = kernels.proximity_count3(
        r, s, d * (1.0 - DEGENERACY_REL), d, d * (1.0 + DEGENERACY_REL)
    )
    return ProximityResult(mid, lo, hi)


def count_proximity(q: ProximityQuery) -> int:
    res = count_proximity_detailed(q)
    if res.degenerate:
        warnings.warn(
            f"proximity count at Delta={q.Delta} is threshold-degenerate: "
            f"{res.count_lower} vs {res.count_upper} within the 1e-12 band",
            RuntimeWarning,
            stacklevel=2,
        )
    return res.count


def lemma21_denominator(q: ProximityQuery) -> float:
    mn = q.M * q.N
    return mn * math.log(2.0 * mn) + q.Delta * mn * mn


def lemma21_ratio(q: ProximityQuery) -> float:
    """count / (MN log(2MN) + Delta (MN)^2)."""
    return count_proximity(q) / lemma21_denominator(q)


@dataclass(frozen=True)
class ExpSumRow:
    instance: ExpSumInstance
    value: complex
    abs_value: float
    bound1: float
    ratio1: float
    bound2: Optional[float]
    ratio2: Optional[float]


@dataclass(frozen=True)
class ExpSumScanReport:
    rows: Tuple[ExpSumRow, ...]
    excluded: int  # instances failing the bound-formula preconditions
    max_ratio1: float
    median_ratio1: float
    max_ratio2: Optional[float]
    median_ratio2: Optional[float]


def bound_ratio_scan(
    instances: Sequence[ExpSumInstance],
    pair: Optional[ExponentPair] = None,
    delta_cap: float = 10.0,
) -> ExpSumScanReport:
    """Evaluate |S_delta| / bound over a grid of instances.

    Instances violating H <= M^(beta-1) N^gamma or |delta| <= delta_cap
    are excluded (and counted), mirroring the bound's preconditions.
    """
    rows: List[ExpSumRow] = []
    excluded = 0
    for inst in instances:
        if not inst.h_feasible or abs(inst.delta) > delta_cap:
            excluded += 1
            continue
        value = eval_s_delta(inst)
        b1 = prop31_bound(inst, variant=1)
        b2 = prop31_bound(inst, pair, variant=2) if pair is not None else None
        rows.append(
            ExpSumRow(
                instance=inst,
                value=value,
                abs_value=abs(value),
                bound1=b1,
                ratio1=abs(value) / b1,
                bound2=b2,
                ratio2=(abs(value) / b2) if b2 is not None else None,
            )
        )
    if not rows:
        raise ValueError("no feasible instances in the scan grid")
    r1 = [row.ratio1 for row in rows]
    r2 = [row.ratio2 for row in rows if row.ratio2 is not None]
    return ExpSumScanReport(
        rows=tuple(rows),
        excluded=excluded,
        max_ratio1=max(r1),
        median_ratio1=statistics.median(r1),
        max_ratio2=max(r2) if r2 else None,
        median_ratio2=statistics.median(r2) if r2 else None,
    )
