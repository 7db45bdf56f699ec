"""Facade over the active kernel backend (see backend.py)."""

import numpy as np

from .backend import BACKEND

if BACKEND == "numba":
    from . import _kernels_numba as _impl
else:
    from . import _kernels_numpy as _impl

prime_mask_segment = _impl.prime_mask_segment
constant_prime_segment = _impl.constant_prime_segment
lambda_floor_sum = _impl.lambda_floor_sum
s_delta_triple = _impl.s_delta_triple
proximity_count3 = _impl.proximity_count3


def vaaler_weights(h_max: int) -> np.ndarray:
    """Sine-series weights Phi(h/(H+1))/(pi*h) for h = 1..H."""
    h = np.arange(1, h_max + 1, dtype=np.float64)
    t = h / (h_max + 1)
    phi = np.pi * t * (1.0 - t) / np.tan(np.pi * t) + t
    return phi / (np.pi * h)


def sine_series_batch(xs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return _impl.sine_series_batch(
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(weights, dtype=np.float64),
    )
