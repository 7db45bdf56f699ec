"""Pure-numpy implementations of the hot kernels.

Fallback path used when numba is unavailable or FLOORSUM_BACKEND=numpy.
Vectorization replaces the numba loops: strided slice clears for sieve
segments, broadcast outer products for the sine series and triple sums,
chunked pairwise reductions with Neumaier combination for long sums.
"""

import math

import numpy as np

from .accum import neumaier


def prime_mask_segment(lo: int, size: int, base_primes: np.ndarray) -> np.ndarray:
    """Boolean mask over [lo, lo+size): True where lo+i is prime.

    base_primes must contain every prime <= sqrt(lo+size-1), ascending.
    """
    mask = np.ones(size, dtype=np.bool_)
    hi = lo + size
    for p in base_primes.tolist():
        start = p * p
        if start >= hi:
            break
        if start < lo:
            start = ((lo + p - 1) // p) * p
        mask[start - lo :: p] = False
    for n in (0, 1):
        if lo <= n < hi:
            mask[n - lo] = False
    return mask


def constant_prime_segment(lo: int, size: int, base_primes: np.ndarray):
    """(sum of log(p)/(p(p+1)) over primes p in [lo, lo+size), prime count)."""
    mask = prime_mask_segment(lo, size, base_primes)
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return 0.0, 0
    p = (lo + idx).astype(np.float64)
    terms = np.log(p) / (p * (p + 1.0))
    return float(np.sum(terms)), int(idx.size)


def lambda_floor_sum(lam: np.ndarray, x: int) -> float:
    """Sum of lam[x // n] for n = 1..x, chunked with compensated combine."""
    chunk = 1 << 20
    partials = []
    n = 1
    while n <= x:
        m = min(x, n + chunk - 1)
        q = x // np.arange(n, m + 1, dtype=np.int64)
        partials.append(float(np.sum(lam[q])))
        n = m + 1
    return neumaier(partials)


def sine_series_batch(xs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """-sum_h weights[h-1] * sin(2*pi*h*x) evaluated for each x."""
    h_count = weights.size
    out = np.empty(xs.size, dtype=np.float64)
    h = np.arange(1, h_count + 1, dtype=np.float64)
    chunk = max(1, (1 << 22) // max(h_count, 1))
    for a in range(0, xs.size, chunk):
        xb = xs[a : a + chunk]
        out[a : a + chunk] = -(np.sin(2.0 * np.pi * np.outer(xb, h)) @ weights)
    return out


def s_delta_triple(
    a: np.ndarray,
    b: np.ndarray,
    h_pow: np.ndarray,
    m_pow: np.ndarray,
    n_pow: np.ndarray,
    coef: float,
    delta: float,
) -> complex:
    """Triple sum a[i,j]*b[k]*e(coef*h_pow[i]/(m_pow[j]*n_pow[k]+delta))."""
    den = m_pow[:, None] * n_pow[None, :] + delta
    phase = coef * h_pow[:, None, None] / den[None, :, :]
    z = a[:, :, None] * (b[None, None, :] * np.exp(2j * np.pi * phase))
    flat = z.ravel()
    return complex(math.fsum(flat.real), math.fsum(flat.imag))


def proximity_count3(
    r: np.ndarray, s: np.ndarray, d_lo: float, d_mid: float, d_hi: float
):
    """Counts of pairs (i, j) with |r[i]-s[j]| <= each threshold.

    Exhaustive pairwise comparison, chunked to bound the broadcast buffer.
    """
    c_lo = c_mid = c_hi = 0
    chunk = max(1, (1 << 24) // max(s.size, 1))
    for a in range(0, r.size, chunk):
        d = np.abs(r[a : a + chunk, None] - s[None, :])
        c_lo += int(np.count_nonzero(d <= d_lo))
        c_mid += int(np.count_nonzero(d <= d_mid))
        c_hi += int(np.count_nonzero(d <= d_hi))
    return c_lo, c_mid, c_hi
