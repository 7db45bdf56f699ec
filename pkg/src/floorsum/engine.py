"""Sums of von Mangoldt values over floor quotients.

Evaluates S(x) = sum_{n<=x} Lambda([x/n]) two ways: a direct O(x) pass
over a sieved table, and an O(sqrt(x)) method that walks the constant
blocks of n -> [x/n] and queries Lambda only at the <= 2*sqrt(x)+2
distinct quotient values. Also: the head/tail split at a cutoff N, the
equivalent divisor-side form of the tail via the sawtooth identity

    #{n : x/(d+1) < n <= x/d} = x/d - x/(d+1) - psi(x/d) + psi(x/(d+1)),

weighted sawtooth sums over dyadic divisor ranges, and error scans
against c*x for a supplied enclosure of the constant c.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .accum import exact_sum
from .arith import MangoldtTable, mangoldt_single, psi_saw
from .constant import Enclosure

# Empirical growth exponent of |S(x) - c*x| used to size sanity margins
# (also the exponent behind the ratio_919 diagnostic column).
ERROR_GROWTH_EXPONENT = 9.0 / 19.0

ERROR_SCAN_CSV_HEADER = ("x", "s_lambda", "c_times_x", "error", "ratio_919", "ratio_half")


def _iter_blocks(x: int):
    n = 1
    while n <= x:
        q = x // n
        n_hi = x // q
        yield q, n, n_hi
        n = n_hi + 1


@dataclass(frozen=True)
class BlockDecomposition:
    """Constant blocks of n -> [x/n]: q[i] = [x/n] for n in [n_lo[i], n_hi[i]]."""

    x: int
    q: np.ndarray
    n_lo: np.ndarray
    n_hi: np.ndarray

    def __len__(self) -> int:
        return self.q.size


def enumerate_blocks(x: int) -> BlockDecomposition:
    if x < 1:
        raise ValueError("enumerate_blocks requires x >= 1")
    qs: List[int] = []
    los: List[int] = []
    his: List[int] = []
    for q, lo, hi in _iter_blocks(x):
        qs.append(q)
        los.append(lo)
        his.append(hi)
    return BlockDecomposition(
        x,
        np.array(qs, dtype=np.int64),
        np.array(los, dtype=np.int64),
        np.array(his, dtype=np.int64),
    )


def s_lambda_direct(x: int, table: MangoldtTable, sorted_terms: bool = False) -> float:
    """sum_{n<=x} Lambda([x/n]) from a dense table, compensated accumulation.

    sorted_terms=True collects the full multiset of log p terms, sorts it
    and sums exactly; the block method in the same mode produces the
    identical multiset, hence the identical binary64 value.
    """
    if x < 1:
        raise ValueError("s_lambda_direct requires x >= 1")
    if table.limit < x:
        raise ValueError(f"table limit {table.limit} is below x={x}")
    if sorted_terms:
        q = x // np.arange(1, x + 1, dtype=np.int64)
        terms = table.lam[q]
        terms = np.sort(terms[terms != 0.0])
        return exact_sum(terms)
    return kernels.lambda_floor_sum(table.lam, x)


def s_lambda_blocks(x: int, sorted_terms: bool = False) -> float:
    """sum_{n<=x} Lambda([x/n]) touching only distinct quotient values."""
    if x < 1:
        raise ValueError("s_lambda_blocks requires x >= 1")
    if x >= 1 << 62:
        raise ValueError("s_lambda_blocks supports x < 2**62")
    if sorted_terms:
        logs: List[float] = []
        counts: List[int] = []
        for q, lo, hi in _iter_blocks(x):
            v = mangoldt_single(q)
            if v != 0.0:
                logs.append(v)
                counts.append(hi - lo + 1)
        terms = np.sort(np.repeat(np.array(logs), np.array(counts, dtype=np.int64)))
        return exact_sum(terms)
    contributions = []
    for q, lo, hi in _iter_blocks(x):
        v = mangoldt_single(q)
        if v != 0.0:
            contributions.append(v * (hi - lo + 1))
    return exact_sum(contributions)


class SplitSum(NamedTuple):
    s1: float
    s2: float


def split_sum(x: int, n_cut: int) -> SplitSum:
    """(sum over n <= n_cut, sum over n_cut < n <= x) of Lambda([x/n])."""
    if x < 1:
        raise ValueError("split_sum requires x >= 1")
    if not 1 <= n_cut <= x:
        raise ValueError(f"cut N={n_cut} outside [1, x={x}]")
    head = []
    tail = []
    for q, lo, hi in _iter_blocks(x):
        v = mangoldt_single(q)
        if v == 0.0:
            continue
        if hi <= n_cut:
            head.append(v * (hi - lo + 1))
        elif lo > n_cut:
            tail.append(v * (hi - lo + 1))
        else:
            head.append(v * (n_cut - lo + 1))
            tail.append(v * (hi - n_cut))
    return SplitSum(exact_sum(head), exact_sum(tail))


def s2_via_psi(x: int, n_cut: int) -> float:
    """Tail sum computed on the divisor side via the sawtooth identity.

    Each block count is evaluated exactly in rational arithmetic as
    x/d - x/(d+1) - psi(x/d) + psi(x/(d+1)), which collapses to the
    integer [x/d] - [x/(d+1)]; the boundary divisor is clamped to n > N.
    """
    if x < 1:
        raise ValueError("s2_via_psi requires x >= 1")
    if not 1 <= n_cut <= x:
        raise ValueError(f"cut N={n_cut} outside [1, x={x}]")
    half = Fraction(1, 2)
    top = x // (n_cut + 1)
    contributions = []
    for d in range(1, top + 1):
        psi_d = Fraction(x % d, d) - half
        psi_d1 = Fraction(x % (d + 1), d + 1) - half
        count = Fraction(x, d) - Fraction(x, d + 1) - psi_d + psi_d1
        assert count.denominator == 1
        c = int(count)
        overhang = n_cut - x // (d + 1)  # block part with n <= N, if any
        if overhang > 0:
            c -= overhang
        if c <= 0:
            continue
        v = mangoldt_single(d)
        if v != 0.0:
            contributions.append(v * c)
    return exact_sum(contributions)


def frak_s_delta(
    x: int, d_range: int, delta: float, table: Optional[MangoldtTable] = None
) -> float:
    """sum_{D < d <= 2D} Lambda(d) * psi(x/(d+delta)).

    Integer delta >= 0 takes the exact path: the fractional part of
    x/(d+delta) comes from integer quotient/remainder, never from a
    binary64 division, so integer quotients classify exactly.
    """
    if d_range < 1:
        raise ValueError("frak_s_delta requires D >= 1")
    if x < 1:
        raise ValueError("frak_s_delta requires x >= 1")
    exact = float(delta).is_integer() and delta >= 0
    if float(delta).is_integer() and delta < 0:
        if d_range < -int(delta) <= 2 * d_range:
            raise ValueError(f"delta={delta} makes d + delta vanish inside (D, 2D]")
    contributions = []
    for d in range(d_range + 1, 2 * d_range + 1):
        if table is not None and d <= table.limit:
            v = float(table.lam[d])
        else:
            v = mangoldt_single(d)
        if v == 0.0:
            continue
        if exact:
            den = d + int(delta)
            psi = (x % den) / den - 0.5
        else:
            psi = psi_saw(x / (d + delta))
        contributions.append(v * psi)
    return exact_sum(contributions)


@dataclass(frozen=True)
class ErrorSample:
    x: int
    s_lambda: float
    c_times_x: float
    error: float
    ratio_919: float
    ratio_half: float

    def csv_row(self) -> Tuple:
        return (
            self.x,
            repr(self.s_lambda),
            repr(self.c_times_x),
            repr(self.error),
            repr(self.ratio_919),
            repr(self.ratio_half),
        )


@dataclass(frozen=True)
class ErrorScanResult:
    samples: Tuple[ErrorSample, ...]
    slope: Optional[float]  # least-squares slope of log|E| vs log x
    c_mid: float
    c_width: float
    band_max: float  # worst-case |E| shift from the enclosure width


def geometric_grid(x_min: int, x_max: int, points: int) -> List[int]:
    """Geometric integer grid; endpoints land on the given round values."""
    if not 1 <= x_min <= x_max:
        raise ValueError("need 1 <= x_min <= x_max")
    if points < 1:
        raise ValueError("need at least one point")
    if points == 1 or x_min == x_max:
        return [x_min] if x_min == x_max else [x_min, x_max]
    la, lb = math.log(x_min), math.log(x_max)
    xs = sorted(
        set(
            int(round(math.exp(la + (lb - la) * k / (points - 1))))
            for k in range(points)
        )
    )
    return xs


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log y against log x (y > 0 entries only)."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if y > 0]
    if len(pts) < 2:
        return None
    lx = np.array([p[0] for p in pts])
    ly = np.array([p[1] for p in pts])
    lx_c = lx - lx.mean()
    denom = float(np.dot(lx_c, lx_c))
    if denom == 0.0:
        return None
    return float(np.dot(lx_c, ly - ly.mean()) / denom)


def error_scan(
    x_grid: Sequence[int],
    c_enclosure: Enclosure,
    threads: Optional[int] = None,
    progress: Optional[Callable[[int], None]] = None,
) -> ErrorScanResult:
    """One ErrorSample per grid point using the block method and mid(c)."""
    grid = [int(x) for x in x_grid]
    if not grid or any(x < 1 for x in grid):
        raise ValueError("x grid must contain integers >= 1")
    if sorted(grid) != grid:
        raise ValueError("x grid must be sorted ascending")
    width = c_enclosure.hi - c_enclosure.lo
    x_max = grid[-1]
    required = 0.1 * x_max ** (ERROR_GROWTH_EXPONENT - 1.0)
    if width > required:
        raise ValueError(
            f"constant enclosure too wide for x up to {x_max}: width {width:.3e} "
            f"would shift errors by {width * x_max:.3e}; need width <= {required:.3e}"
        )
    c_mid = 0.5 * (c_enclosure.lo + c_enclosure.hi)

    def one(x: int) -> ErrorSample:
        s = s_lambda_blocks(x)
        cx = c_mid * x
        err = s - cx
        sample = ErrorSample(
            x=x,
            s_lambda=s,
            c_times_x=cx,
            error=err,
            ratio_919=abs(err) / x ** ERROR_GROWTH_EXPONENT,
            ratio_half=abs(err) / math.sqrt(x),
        )
        if progress is not None:
            progress(x)
        return sample

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(one, grid))
    else:
        samples = [one(x) for x in grid]
    samples.sort(key=lambda s: s.x)
    slope = loglog_slope([s.x for s in samples], [abs(s.error) for s in samples])
    return ErrorScanResult(
        samples=tuple(samples),
        slope=slope,
        c_mid=c_mid,
        c_width=width,
        band_max=width * x_max,
    )
