"""Compensated floating-point accumulation helpers.

Long sums in this package (10^4 terms and beyond) never use naive
sequential addition: the error signal being measured can sit ten orders
of magnitude below the summands, so accumulation error is kept near one
ulp via Neumaier compensation or exact rounding (math.fsum).
"""

import math

import numpy as np


def neumaier(values) -> float:
    """Neumaier-compensated sum of an iterable of floats."""
    s = 0.0
    c = 0.0
    for t in values:
        total = s + t
        if abs(s) >= abs(t):
            c += (s - total) + t
        else:
            c += (t - total) + s
        s = total
    return s + c


def compensated_array_sum(arr: np.ndarray, chunk: int = 1 << 20) -> float:
    """Sum a float array: pairwise np.sum per chunk, Neumaier across chunks.

    np.sum's pairwise reduction already bounds per-chunk error by
    ~log2(chunk) ulp; compensating the (few) chunk totals keeps the whole
    sum well inside the n*eps envelope assumed by callers.
    """
    flat = np.ascontiguousarray(arr, dtype=np.float64).ravel()
    if flat.size <= chunk:
        return float(np.sum(flat))
    partials = [
        float(np.sum(flat[i : i + chunk])) for i in range(0, flat.size, chunk)
    ]
    return neumaier(partials)


def exact_sum(values) -> float:
    """Exactly rounded sum (math.fsum)."""
    return math.fsum(values)
