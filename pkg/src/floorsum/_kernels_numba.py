"""numba @njit implementations of the hot kernels.

Same contracts as _kernels_numpy; loops compile to machine code and the
long sums carry explicit Neumaier compensation.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def prime_mask_segment(lo: int, size: int, base_primes: np.ndarray) -> np.ndarray:
    mask = np.ones(size, dtype=np.bool_)
    hi = lo + size
    for p in base_primes:
        start = p * p
        if start >= hi:
            break
        if start < lo:
            start = ((lo + p - 1) // p) * p
        for j in range(start - lo, size, p):
            mask[j] = False
    for n in (0, 1):
        if lo <= n < hi:
            mask[n - lo] = False
    return mask


@njit(cache=True)
def constant_prime_segment(lo: int, size: int, base_primes: np.ndarray):
    mask = prime_mask_segment(lo, size, base_primes)
    s = 0.0
    c = 0.0
    count = 0
    for i in range(size):
        if mask[i]:
            p = float(lo + i)
            t = np.log(p) / (p * (p + 1.0))
            total = s + t
            if abs(s) >= abs(t):
                c += (s - total) + t
            else:
                c += (t - total) + s
            s = total
            count += 1
    return s + c, count


@njit(cache=True)
def lambda_floor_sum(lam: np.ndarray, x: int) -> float:
    s = 0.0
    c = 0.0
    for n in range(1, x + 1):
        t = lam[x // n]
        total = s + t
        if abs(s) >= abs(t):
            c += (s - total) + t
        else:
            c += (t - total) + s
        s = total
    return s + c


@njit(cache=True)
def sine_series_batch(xs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    out = np.empty(xs.size, dtype=np.float64)
    two_pi = 2.0 * np.pi
    for i in range(xs.size):
        acc = 0.0
        x = xs[i]
        for h in range(1, weights.size + 1):
            acc += weights[h - 1] * np.sin(two_pi * h * x)
        out[i] = -acc
    return out


@njit(cache=True)
def s_delta_triple(
    a: np.ndarray,
    b: np.ndarray,
    h_pow: np.ndarray,
    m_pow: np.ndarray,
    n_pow: np.ndarray,
    coef: float,
    delta: float,
) -> complex:
    sr = 0.0
    cr = 0.0
    si = 0.0
    ci = 0.0
    two_pi = 2.0 * np.pi
    for i in range(h_pow.size):
        num = coef * h_pow[i]
        for j in range(m_pow.size):
            for k in range(n_pow.size):
                phase = two_pi * (num / (m_pow[j] * n_pow[k] + delta))
                z = a[i, j] * b[k] * complex(np.cos(phase), np.sin(phase))
                t = z.real
                total = sr + t
                if abs(sr) >= abs(t):
                    cr += (sr - total) + t
                else:
                    cr += (t - total) + sr
                sr = total
                t = z.imag
                total = si + t
                if abs(si) >= abs(t):
                    ci += (si - total) + t
                else:
                    ci += (t - total) + si
                si = total
    return complex(sr + cr, si + ci)


@njit(cache=True)
def proximity_count3(
    r: np.ndarray, s: np.ndarray, d_lo: float, d_mid: float, d_hi: float
):
    c_lo = 0
    c_mid = 0
    c_hi = 0
    for i in range(r.size):
        ri = r[i]
        for j in range(s.size):
            d = abs(ri - s[j])
            if d <= d_lo:
                c_lo += 1
            if d <= d_mid:
                c_mid += 1
            if d <= d_hi:
                c_hi += 1
    return c_lo, c_mid, c_hi
