"""Truncated trigonometric approximation of the sawtooth, with the
Fejer-kernel majorant of its error.

psi_H(x) = -sum_{h=1}^{H} Phi(h/(H+1)) sin(2 pi h x)/(pi h) approximates
psi(x) = {x} - 1/2 with |psi - psi_H| bounded pointwise by the scaled
Fejer kernel F_H(x)/(2H+2); the weight Phi(t) = pi t (1-|t|) cot(pi t) + |t|.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .prng import SplitMix64

# Below this |sin(pi x)| the closed Fejer form is 0/0-unstable; fall back
# to the direct O(H) sum (the kernel peak region).
NEAR_INTEGER_SIN = 1e-9


def phi_weight(t: float) -> float:
    """pi*t*(1-|t|)*cot(pi*t) + |t| on (-1, 1), extended by continuity at 0."""
    t = float(t)
    if not abs(t) < 1.0:
        raise ValueError("phi_weight requires |t| < 1")
    if t == 0.0:
        return 1.0
    at = abs(t)
    return math.pi * t * (1.0 - at) / math.tan(math.pi * t) + at


def psi_vaaler(x: float, h_max: int) -> float:
    """Degree-H sine-series approximation of the sawtooth at x."""
    return float(psi_vaaler_values(np.array([x], dtype=np.float64), h_max)[0])


def psi_vaaler_values(xs: np.ndarray, h_max: int) -> np.ndarray:
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    weights = kernels.vaaler_weights(h_max)
    return kernels.sine_series_batch(np.asarray(xs, dtype=np.float64), weights)


def fejer_bound_direct(x: float, h_max: int) -> float:
    """Direct O(H) evaluation of the error majorant (stable everywhere)."""
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    h1 = h_max + 1
    acc = 1.0
    for h in range(1, h_max + 1):
        acc += 2.0 * (1.0 - h / h1) * math.cos(2.0 * math.pi * h * x)
    return acc / (2.0 * h1)


def fejer_bound(x: float, h_max: int) -> float:
    """Pointwise bound on |psi(x) - psi_H(x)|: Fejer kernel over 2H+2.

    Closed form (sin((H+1) pi x)/sin(pi x))^2 / (2 (H+1)^2) away from
    integers; near the kernel peaks the direct sum is used instead.
    """
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    h1 = h_max + 1
    s = math.sin(math.pi * x)
    if abs(s) < NEAR_INTEGER_SIN:
        return fejer_bound_direct(x, h_max)
    r = math.sin(h1 * math.pi * x) / s
    return r * r / (2.0 * h1 * h1)


def fejer_bound_values(xs: np.ndarray, h_max: int) -> np.ndarray:
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    xs = np.asarray(xs, dtype=np.float64)
    h1 = h_max + 1
    s = np.sin(np.pi * xs)
    near = np.abs(s) < NEAR_INTEGER_SIN
    safe = np.where(near, 1.0, s)
    r = np.sin(h1 * np.pi * xs) / safe
    out = r * r / (2.0 * h1 * h1)
    for i in np.flatnonzero(near).tolist():
        out[i] = fejer_bound_direct(float(xs[i]), h_max)
    return out


@dataclass(frozen=True)
class VaalerCheckResult:
    h_max: int
    samples: int
    seed: int
    max_abs_error: float  # max |psi(x) - psi_H(x)| observed
    max_slack: float  # max of bound - |error|
    min_slack: float  # min of bound - |error| (worst margin)
    violations: int  # samples with |error| > bound + tolerance
    tolerance: float
    passed: bool


def vaaler_check(
    h_max: int, samples: int, seed: int, tolerance: float = 1e-10
) -> VaalerCheckResult:
    """Sample x in (0, 1) and test |psi - psi_H| <= fejer_bound + tolerance."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = SplitMix64(seed)
    xs = np.empty(samples, dtype=np.float64)
    for i in range(samples):
        u = rng.next_float()
        while u == 0.0:
            u = rng.next_float()
        xs[i] = u
    approx = psi_vaaler_values(xs, h_max)
    exact = (xs - np.floor(xs)) - 0.5
    err = np.abs(exact - approx)
    bound = fejer_bound_values(xs, h_max)
    slack = bound - err
    violations = int(np.count_nonzero(err > bound + tolerance))
    return VaalerCheckResult(
        h_max=h_max,
        samples=samples,
        seed=seed,
        max_abs_error=float(np.max(err)),
        max_slack=float(np.max(slack)),
        min_slack=float(np.min(slack)),
        violations=violations,
        tolerance=tolerance,
        passed=violations == 0,
    )
