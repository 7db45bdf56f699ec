"""Concrete Vaughan-style combinatorial decomposition with exact checks.

For a weight g on (D, 2D] the identity

    sum_{D < d <= 2D} Lambda(d) g(d) = S1 + S2 + S3 + S4

is realized from, for n > U with U = V = floor(D^(1/3)),

    Lambda(n) =  sum_{b|n, b<=V} mu(b) log(n/b)
               - sum_{bc|n, b<=V, c<=U} mu(b) Lambda(c)
               + sum_{bc|n, b>V, c>U} mu(b) Lambda(c).

The first piece becomes S2 (coefficients mu, an explicit log n factor);
the middle convolution beta(m) = sum_{bc=m, b<=V, c<=U} mu(b)Lambda(c)
splits at m <= U into S1 (coefficients -beta) and U < m <= U^2 into S3;
the last piece becomes S4 with coefficients mu(m) and
a6(n) = sum_{c|n, c>U} Lambda(c).

Every quantity is carried exactly: log values live in the free abelian
group on primes (PrimeLogVector), g is rational-valued, and the identity
check is exact map equality with zero tolerance.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .arith import icbrt, sieve_mangoldt, sieve_moebius
from .prng import SplitMix64

_INT_SCALE_CAP = 1 << 62  # fall back to Fraction accumulation above this lcm


class PrimeLogVector:
    """Exact rational combination sum_p c_p * log p, sparse over primes."""

    __slots__ = ("_coef",)

    def __init__(self, coef: Optional[Dict[int, Fraction]] = None):
        self._coef: Dict[int, Fraction] = {}
        if coef:
            for p, c in coef.items():
                if c:
                    self._coef[p] = Fraction(c)

    @classmethod
    def zero(cls) -> "PrimeLogVector":
        return cls()

    @classmethod
    def single(cls, p: int, c=1) -> "PrimeLogVector":
        return cls({p: Fraction(c)})

    def coefficients(self) -> Dict[int, Fraction]:
        return dict(self._coef)

    def is_zero(self) -> bool:
        return not self._coef

    def __bool__(self) -> bool:
        return bool(self._coef)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrimeLogVector):
            return NotImplemented
        return self._coef == other._coef

    def __hash__(self):
        return hash(frozenset(self._coef.items()))

    def __add__(self, other: "PrimeLogVector") -> "PrimeLogVector":
        out = dict(self._coef)
        for p, c in other._coef.items():
            new = out.get(p, 0) + c
            if new:
                out[p] = new
            else:
                out.pop(p, None)
        v = PrimeLogVector()
        v._coef = out
        return v

    def __sub__(self, other: "PrimeLogVector") -> "PrimeLogVector":
        return self + (other * -1)

    def __mul__(self, scalar) -> "PrimeLogVector":
        if not scalar:
            return PrimeLogVector()
        v = PrimeLogVector()
        v._coef = {p: c * scalar for p, c in self._coef.items()}
        return v

    __rmul__ = __mul__

    def to_float(self) -> float:
        return math.fsum(float(c) * math.log(p) for p, c in self._coef.items())

    def __repr__(self) -> str:
        if not self._coef:
            return "PrimeLogVector(0)"
        parts = [f"{c}*log{p}" for p, c in sorted(self._coef.items())]
        return "PrimeLogVector(" + " + ".join(parts) + ")"


@dataclass
class VaughanCoefficients:
    """Coefficient data of the decomposition at a given D (U = V = D^(1/3))."""

    D: int
    cutoff: int  # U
    alpha1: List[Dict[int, int]]  # m in [0, U]; -beta(m) as {p: int}
    alpha2: np.ndarray  # mu(m) for m in [0, U]
    alpha3: Dict[int, Dict[int, int]]  # U < m <= U^2
    mu: np.ndarray  # mu on [0, 2D]  (alpha5(m) = mu(m) for m > U)
    alpha6: List[Dict[int, int]]  # n in [0, 2D // (U+1)]
    lam_prime: np.ndarray  # prime p if d = p^k else 0, on [0, 2D]
    _factors: Dict[int, Tuple[Tuple[int, int], ...]] = field(default_factory=dict)
    _spf: np.ndarray = field(default=None, repr=False)

    def factor(self, n: int) -> Tuple[Tuple[int, int], ...]:
        """(prime, exponent) factorization, memoized (for exact log n)."""
        cached = self._factors.get(n)
        if cached is not None:
            return cached
        out = []
        m = n
        while m > 1:
            p = int(self._spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        res = tuple(out)
        self._factors[n] = res
        return res


def _smallest_prime_factor(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            view = spf[p::p]
            view[view == 0] = p
    return spf


def build_coefficients(D: int) -> VaughanCoefficients:
    """Materialize the decomposition coefficients for block (D, 2D]."""
    if D < 100:
        raise ValueError("build_coefficients requires D >= 100")
    U = icbrt(D)
    two_d = 2 * D
    mu = sieve_moebius(two_d).values
    table = sieve_mangoldt(two_d)
    spf = _smallest_prime_factor(two_d)

    # beta(m) = sum_{bc = m, b <= V, c <= U} mu(b) Lambda(c), m <= U*V
    beta: Dict[int, Dict[int, int]] = {}
    for c in range(2, U + 1):
        p = int(table.prime[c])
        if p == 0:
            continue
        for b in range(1, min(U, U * U // c) + 1):
            m_b = int(mu[b])
            if m_b == 0:
                continue
            entry = beta.setdefault(b * c, {})
            new = entry.get(p, 0) + m_b
            if new:
                entry[p] = new
            else:
                del entry[p]

    alpha1 = [dict() for _ in range(U + 1)]
    for m in range(1, U + 1):
        bm = beta.get(m)
        if bm:
            alpha1[m] = {p: -c for p, c in bm.items()}
    alpha3 = {
        m: {p: -c for p, c in bm.items()}
        for m, bm in beta.items()
        if U < m <= U * U and bm
    }

    # a6(n) = sum_{c | n, c > U} Lambda(c), needed for n <= 2D/(U+1)
    n4_max = two_d // (U + 1)
    alpha6 = [dict() for _ in range(n4_max + 1)]
    for c in range(U + 1, n4_max + 1):
        p = int(table.prime[c])
        if p == 0:
            continue
        for n in range(c, n4_max + 1, c):
            entry = alpha6[n]
            entry[p] = entry.get(p, 0) + 1

    return VaughanCoefficients(
        D=D,
        cutoff=U,
        alpha1=alpha1,
        alpha2=mu[: U + 1].copy(),
        alpha3=alpha3,
        mu=mu,
        alpha6=alpha6,
        lam_prime=table.prime,
        _spf=spf,
    )


class VaughanSums(NamedTuple):
    s1: PrimeLogVector
    s2: PrimeLogVector
    s3: PrimeLogVector
    s4: PrimeLogVector

    def total(self) -> PrimeLogVector:
        return self.s1 + self.s2 + self.s3 + self.s4


def _finalize(acc: Dict[int, object], scale) -> PrimeLogVector:
    if scale is None:
        return PrimeLogVector({p: Fraction(c) for p, c in acc.items()})
    return PrimeLogVector({p: Fraction(c, scale) for p, c in acc.items()})


def vaughan_sum(
    g: Callable[[int], Fraction],
    D: int,
    coeffs: Optional[VaughanCoefficients] = None,
) -> VaughanSums:
    """The four sums of the decomposition for an exact rational weight g.

    g is consulted exactly on [D+1, 2D]. When the g denominators have a
    small lcm the accumulation runs over scaled integers; otherwise it
    falls back to Fraction arithmetic. Both paths are exact.
    """
    if coeffs is None:
        coeffs = build_coefficients(D)
    elif coeffs.D != D:
        raise ValueError(f"coefficients built for D={coeffs.D}, not {D}")
    U = coeffs.cutoff
    two_d = 2 * D
    gvals = [Fraction(g(d)) for d in range(D + 1, two_d + 1)]

    scale = 1
    for q in gvals:
        scale = scale * q.denominator // math.gcd(scale, q.denominator)
        if scale > _INT_SCALE_CAP:
            scale = None
            break
    if scale is None:
        gs: List = gvals
    else:
        gs = [int(q * scale) for q in gvals]

    acc1: Dict[int, object] = {}
    acc2: Dict[int, object] = {}
    acc3: Dict[int, object] = {}
    acc4: Dict[int, object] = {}

    def bump(acc, p, w):
        new = acc.get(p, 0) + w
        if new:
            acc[p] = new
        else:
            del acc[p]

    mu = coeffs.mu
    base = D + 1
    # S1 and S2: m <= U
    for m in range(1, U + 1):
        a1 = coeffs.alpha1[m]
        mu_m = int(coeffs.alpha2[m])
        if not a1 and mu_m == 0:
            continue
        for n in range(D // m + 1, two_d // m + 1):
            w = gs[m * n - base]
            if not w:
                continue
            for p, c in a1.items():
                bump(acc1, p, c * w)
            if mu_m:
                wm = w if mu_m == 1 else -w
                for p, e in coeffs.factor(n):
                    bump(acc2, p, e * wm)
    # S3: U < m <= U^2
    for m, a3 in coeffs.alpha3.items():
        for n in range(D // m + 1, two_d // m + 1):
            w = gs[m * n - base]
            if not w:
                continue
            for p, c in a3.items():
                bump(acc3, p, c * w)
    # S4: m > U (mu(m) != 0), n carries a6
    a6 = coeffs.alpha6
    for m in range(U + 1, two_d + 1):
        mu_m = int(mu[m])
        if mu_m == 0:
            continue
        for n in range(D // m + 1, two_d // m + 1):
            entry = a6[n]
            if not entry:
                continue
            w = gs[m * n - base]
            if not w:
                continue
            wm = w if mu_m == 1 else -w
            for p, c in entry.items():
                bump(acc4, p, c * wm)

    return VaughanSums(
        _finalize(acc1, scale),
        _finalize(acc2, scale),
        _finalize(acc3, scale),
        _finalize(acc4, scale),
    )


def mangoldt_weighted_sum(
    g: Callable[[int], Fraction],
    D: int,
    coeffs: Optional[VaughanCoefficients] = None,
) -> PrimeLogVector:
    """sum_{D < d <= 2D} Lambda(d) g(d), exactly, by direct enumeration."""
    if coeffs is None:
        coeffs = build_coefficients(D)
    acc: Dict[int, Fraction] = {}
    for d in range(D + 1, 2 * D + 1):
        p = int(coeffs.lam_prime[d])
        if p == 0:
            continue
        w = Fraction(g(d))
        if w:
            new = acc.get(p, 0) + w
            if new:
                acc[p] = new
            else:
                del acc[p]
    return PrimeLogVector(acc)


def coefficient_bound_ratio(coeffs: VaughanCoefficients) -> float:
    """max over stored coefficient entries of |alpha(m)| / log(m + 2)."""
    worst = 0.0
    for m in range(1, coeffs.cutoff + 1):
        v = PrimeLogVector({p: c for p, c in coeffs.alpha1[m].items()})
        worst = max(worst, abs(v.to_float()) / math.log(m + 2))
        worst = max(worst, abs(int(coeffs.alpha2[m])) / math.log(m + 2))
    for m, entry in coeffs.alpha3.items():
        v = PrimeLogVector({p: c for p, c in entry.items()})
        worst = max(worst, abs(v.to_float()) / math.log(m + 2))
    for n, entry in enumerate(coeffs.alpha6):
        if entry:
            v = PrimeLogVector({p: c for p, c in entry.items()})
            worst = max(worst, abs(v.to_float()) / math.log(n + 2))
    return worst


def seeded_rational_weight(
    seed: int,
    D: int,
    numerator_bound: int = 6,
    denominators: Tuple[int, ...] = (1, 2, 3, 4, 5, 6),
) -> Callable[[int], Fraction]:
    """Reproducible rational weight on [D+1, 2D]: num/den drawn per d ascending."""
    rng = SplitMix64(seed)
    span = 2 * numerator_bound + 1
    values = {}
    for d in range(D + 1, 2 * D + 1):
        num = rng.next_below(span) - numerator_bound
        den = denominators[rng.next_below(len(denominators))]
        values[d] = Fraction(num, den)
    return lambda d: values[d]


@dataclass(frozen=True)
class VaughanCheckResult:
    D: int
    trials: int
    seed: int
    exact_failures: int
    max_coefficient_ratio: float
    passed: bool


def vaughan_check(D: int, trials: int, seed: int) -> VaughanCheckResult:
    """Run seeded random-weight identity checks at one D."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    coeffs = build_coefficients(D)
    failures = 0
    for t in range(trials):
        g = seeded_rational_weight(seed + t, D)
        sums = vaughan_sum(g, D, coeffs)
        lhs = mangoldt_weighted_sum(g, D, coeffs)
        if sums.total() != lhs:
            failures += 1
    ratio = coefficient_bound_ratio(coeffs)
    return VaughanCheckResult(
        D=D,
        trials=trials,
        seed=seed,
        exact_failures=failures,
        max_coefficient_ratio=ratio,
        passed=failures == 0 and ratio <= 1.0,
    )
