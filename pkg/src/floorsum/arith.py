"""Number-theoretic primitives.

Von Mangoldt and Moebius sieves (segmented, streaming for large limits),
prime-power detection for isolated 64-bit arguments, the sawtooth
psi(t) = {t} - 1/2, and exact rational arithmetic.

Naming note: psi_saw is the sawtooth above; chebyshev_psi is the
summatory function of the von Mangoldt values. They are unrelated
objects that share a letter in the classical notation.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .accum import neumaier

# Exact rational arithmetic: fractions.Fraction already provides
# arbitrary-precision reduced canonical form with exact field operations,
# so it is used directly as the Rational type of this package.
Rational = Fraction

SEGMENT_SIZE = 1 << 22

# Deterministic Miller-Rabin witness set, valid for every n < 3.3e24
# (covers the full 64-bit range).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
)

_MAX_TABLE_LIMIT = 200_000_000  # materialized table memory guard


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact Fraction."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def psi_saw(t: float) -> float:
    """Sawtooth {t} - 1/2, exactly -1/2 at integers."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("psi_saw requires a finite argument")
    return (t - math.floor(t)) - 0.5


def is_prime_u64(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64 (fixed witness set)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def introot(n: int, k: int) -> int:
    """floor(n**(1/k)) by integer Newton iteration with exact correction.

    No floating-point root is trusted: the float estimate only seeds the
    iteration, and the final value is adjusted with exact integer powers.
    """
    if n < 0:
        raise ValueError("introot requires n >= 0")
    if k < 1:
        raise ValueError("introot requires k >= 1")
    if n == 0 or k == 1:
        return n
    # 2**ceil(bits/k) >= n**(1/k): a safe upper seed
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def icbrt(n: int) -> int:
    return introot(n, 3)


@lru_cache(maxsize=1 << 20)
def prime_power_split(n: int) -> Optional[Tuple[int, int]]:
    """(p, k) with n = p**k and p prime, or None. Exact integer tests only."""
    if n < 1:
        raise ValueError("prime_power_split requires n >= 1")
    if n >= 1 << 63:
        raise ValueError("prime_power_split supports n < 2**63")
    if n == 1:
        return None
    for p in _SMALL_PRIMES:
        if n % p == 0:
            m = n
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    if is_prime_u64(n):
        return (n, 1)
    # No factor below 67 and composite: n = p**k forces p >= 67, k >= 2.
    k = 2
    while 67 ** k <= n:
        r = introot(n, k)
        if r ** k == n and is_prime_u64(r):
            return (r, k)
        k += 1
    return None


def mangoldt_single(n: int) -> float:
    """log p if n = p**k (k >= 1), else 0. For isolated 64-bit arguments."""
    split = prime_power_split(n)
    if split is None:
        return 0.0
    return _log_of_prime(split[0])


@lru_cache(maxsize=1 << 18)
def _log_of_prime(p: int) -> float:
    # one cached binary64 log per prime; every occurrence shares it
    return math.log(p)


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=np.bool_)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _power_entries(base_primes: np.ndarray, lo: int, hi: int):
    """Yield (n, p, k) for prime powers n = p**k, k >= 2, lo <= n < hi."""
    for p in base_primes.tolist():
        if p * p >= hi:
            break
        pk = p * p
        k = 2
        while pk < hi:
            if pk >= lo:
                yield pk, p, k
            pk *= p
            k += 1


def mangoldt_segments(
    lo: int,
    hi: int,
    segment_size: int = SEGMENT_SIZE,
    exact_logs: bool = False,
) -> Iterator[Tuple[int, np.ndarray]]:
    """Stream von Mangoldt values over [lo, hi] as (segment_lo, values).

    exact_logs=True computes each prime's log via math.log so the values
    agree bit-for-bit with mangoldt_single; the default vectorized np.log
    is for tolerance-domain summations at large limits.
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    base = sieve_primes(math.isqrt(hi))
    for seg_lo in range(lo, hi + 1, segment_size):
        size = min(segment_size, hi + 1 - seg_lo)
        mask = kernels.prime_mask_segment(seg_lo, size, base)
        lam = np.zeros(size, dtype=np.float64)
        idx = np.flatnonzero(mask)
        if idx.size:
            if exact_logs:
                for i in idx.tolist():
                    lam[i] = _log_of_prime(seg_lo + i)
            else:
                lam[idx] = np.log((seg_lo + idx).astype(np.float64))
        for n, p, _k in _power_entries(base, seg_lo, seg_lo + size):
            lam[n - seg_lo] = _log_of_prime(p) if exact_logs else math.log(p)
        yield seg_lo, lam


@dataclass(frozen=True)
class MangoldtTable:
    """Dense von Mangoldt table on [0, limit].

    prime[n], exponent[n] give the factorization n = p**k when n is a
    prime power (0 otherwise); lam[n] holds the shared binary64 log p.
    """

    limit: int
    prime: np.ndarray
    exponent: np.ndarray
    lam: np.ndarray

    def entry(self, n: int) -> Optional[Tuple[int, int]]:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range [1, {self.limit}]")
        p = int(self.prime[n])
        if p == 0:
            return None
        return p, int(self.exponent[n])

    def value(self, n: int) -> float:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range [1, {self.limit}]")
        return float(self.lam[n])


def sieve_mangoldt(limit: int, segment_size: int = SEGMENT_SIZE) -> MangoldtTable:
    """Sieve the von Mangoldt function on [1, limit] (segmented).

    Logs are computed once per prime via math.log, so table values agree
    exactly with mangoldt_single.
    """
    if limit < 1:
        raise ValueError("sieve_mangoldt requires limit >= 1")
    if limit > _MAX_TABLE_LIMIT:
        raise ValueError(
            f"materialized table at limit={limit} exceeds the memory guard "
            f"({_MAX_TABLE_LIMIT}); use the streaming mangoldt_segments"
        )
    prime = np.zeros(limit + 1, dtype=np.uint32)
    exponent = np.zeros(limit + 1, dtype=np.uint8)
    lam = np.zeros(limit + 1, dtype=np.float64)
    if limit == 1:
        return MangoldtTable(1, prime, exponent, lam)
    base = sieve_primes(math.isqrt(limit))
    for seg_lo in range(2, limit + 1, segment_size):
        size = min(segment_size, limit + 1 - seg_lo)
        mask = kernels.prime_mask_segment(seg_lo, size, base)
        idx = np.flatnonzero(mask)
        if idx.size:
            ps = (seg_lo + idx).astype(np.uint32)
            prime[seg_lo + idx] = ps
            exponent[seg_lo + idx] = 1
            for i in idx.tolist():
                lam[seg_lo + i] = _log_of_prime(seg_lo + i)
        for n, p, k in _power_entries(base, seg_lo, seg_lo + size):
            prime[n] = p
            exponent[n] = k
            lam[n] = _log_of_prime(p)
    return MangoldtTable(limit, prime, exponent, lam)


@dataclass(frozen=True)
class MoebiusTable:
    limit: int
    values: np.ndarray  # int8, values[n] = mu(n)

    def value(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range [1, {self.limit}]")
        return int(self.values[n])


def sieve_moebius(limit: int) -> MoebiusTable:
    """Moebius function on [1, limit]: one sign flip per prime, zero on squares."""
    if limit < 1:
        raise ValueError("sieve_moebius requires limit >= 1")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in sieve_primes(limit).tolist():
        mu[p::p] *= -1
        sq = p * p
        if sq <= limit:
            mu[sq::sq] = 0
    return MoebiusTable(limit, mu)


def chebyshev_psi_checkpoints(
    checkpoints: Sequence[int], segment_size: int = SEGMENT_SIZE
) -> dict:
    """Sum of von Mangoldt values up to each checkpoint, one streaming pass."""
    cps = sorted(set(int(c) for c in checkpoints))
    if not cps or cps[0] < 1:
        raise ValueError("checkpoints must be integers >= 1")
    hi = cps[-1]
    out = {}
    partials = []
    remaining = list(cps)
    for seg_lo, lam in mangoldt_segments(1, hi, segment_size):
        seg_hi = seg_lo + lam.size - 1
        while remaining and remaining[0] <= seg_hi:
            c = remaining.pop(0)
            head = float(np.sum(lam[: c - seg_lo + 1]))
            out[c] = neumaier(partials + [head])
        partials.append(float(np.sum(lam)))
    return out


def chebyshev_psi(limit: int, segment_size: int = SEGMENT_SIZE) -> float:
    return chebyshev_psi_checkpoints([limit], segment_size)[limit]


def chebyshev_max_ratio(limit: int, segment_size: int = SEGMENT_SIZE) -> float:
    """max over integer t in [1, limit] of (sum_{n<=t} Lambda(n)) / t."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    best = 0.0
    offset = 0.0
    for seg_lo, lam in mangoldt_segments(1, limit, segment_size):
        cum = np.cumsum(lam) + offset
        t = np.arange(seg_lo, seg_lo + lam.size, dtype=np.float64)
        best = max(best, float(np.max(cum / t)))
        offset = float(cum[-1])
    return best
