"""Acceptance suite: one test per numbered criterion, run with -s to see
the per-criterion pass/fail lines. Budgets and tolerances are asserted
exactly as pinned; nothing here is calibrated at runtime.
"""

import csv
import math
import time
from fractions import Fraction as F

import floorsum as fs
from floorsum.engine import ERROR_SCAN_CSV_HEADER, geometric_grid
from floorsum.expsum import (
    ExpSumInstance,
    ProximityQuery,
    count_proximity_detailed,
    eval_s_delta,
    lemma21_denominator,
    prop31_bound,
)
from floorsum.vaughan import (
    build_coefficients,
    mangoldt_weighted_sum,
    seeded_rational_weight,
    vaughan_sum,
)

BASE_SEED = 20260808


def _report(n: int, label: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] acceptance {n:02d}: {label}{suffix}")
    assert ok, f"acceptance {n:02d}: {label}{suffix}"


def test_01_exact_exponent_reproductions():
    t0 = time.time()
    ok = True
    ok &= fs.bordelles_exponent(fs.ExponentPair(F(13, 84), F(55, 84))) == F(97, 203)
    ok &= fs.bordelles_exponent(fs.ExponentPair(0, F(1, 2))) == F(28, 59)
    half = fs.ExponentPair(F(1, 2), F(1, 2))
    expr = fs.prop41_bound(half, half)
    ok &= [(t.a, t.b) for t in expr.terms] == [
        (F(1, 6), F(7, 12)),
        (F(0), F(5, 6)),
        (F(1, 3), F(2, 9)),
        (F(1, 2), F(-1, 6)),
    ]
    ok &= fs.optimize_split(expr.terms[0]) == (F(9, 19), F(9, 19))
    ok &= fs.window_edge(expr.terms[0], expr.terms[2]) == F(6, 13)
    ok &= F(9, 19) < F(28, 59) < F(97, 203)
    elapsed = time.time() - t0
    ok &= elapsed < 1.0
    _report(1, "exact exponent reproductions", ok, f"{elapsed:.3f}s")


def test_02_vaughan_identity_exactness():
    t0 = time.time()
    failures = 0
    for d_block in (125, 1000, 4096, 10000):
        coeffs = build_coefficients(d_block)
        for trial in range(20):
            g = seeded_rational_weight(BASE_SEED + trial, d_block)
            sums = vaughan_sum(g, d_block, coeffs)
            if sums.total() != mangoldt_weighted_sum(g, d_block, coeffs):
                failures += 1
    elapsed = time.time() - t0
    ok = failures == 0 and elapsed <= 60.0
    _report(2, "decomposition identity exact over 4x20 seeded weights", ok,
            f"failures={failures}, {elapsed:.1f}s")


def test_03_block_method_correctness(table_1e4, table_1e7):
    t0 = time.time()
    worst_small = 0.0
    ok = True
    for x in range(1, 10**4 + 1):
        d = fs.s_lambda_direct(x, table_1e4)
        b = fs.s_lambda_blocks(x)
        if d == 0.0:
            ok &= b == 0.0
        else:
            worst_small = max(worst_small, abs(d - b) / abs(d))
    ok &= worst_small <= 1e-10
    worst_large = 0.0
    for x in (10**5, 10**6, 10**7):
        d = fs.s_lambda_direct(x, table_1e7)
        b = fs.s_lambda_blocks(x)
        worst_large = max(worst_large, abs(d - b) / abs(d))
    ok &= worst_large <= 1e-9
    elapsed = time.time() - t0
    ok &= elapsed <= 120.0
    _report(3, "block vs direct agreement (exhaustive 1e4; 1e5..1e7)", ok,
            f"rel {worst_small:.2e}/{worst_large:.2e}, {elapsed:.1f}s")


def test_04_s2_counting_identity():
    cases = [(10**4, 21), (10**6, 10**3), (10**7, int((10**7) ** (9 / 19)))]
    worst = 0.0
    for x, n_cut in cases:
        want = fs.split_sum(x, n_cut).s2
        got = fs.s2_via_psi(x, n_cut)
        worst = max(worst, abs(got - want) / max(abs(want), 1e-300))
    ok = worst <= 1e-9
    _report(4, "tail sum via sawtooth identity matches the n-side split", ok,
            f"worst rel {worst:.2e}")


def test_05_vaaler_inequality():
    t0 = time.time()
    maxima = []
    violations = 0
    for h_max in (1, 10, 100, 1000):
        res = fs.vaaler_check(h_max, 10**4, seed=BASE_SEED)
        violations += res.violations
        maxima.append(res.max_abs_error)
    decreasing = all(a > b for a, b in zip(maxima, maxima[1:]))
    elapsed = time.time() - t0
    ok = violations == 0 and decreasing and elapsed <= 30.0
    _report(5, "sawtooth approximation error within its majorant", ok,
            f"max|R|={['%.4f' % m for m in maxima]}, {elapsed:.1f}s")


def test_06_proximity_count_scaling():
    t0 = time.time()
    ok = True
    details = []
    for alpha, beta in ((1.0, 1.0), (0.5, 1.0), (1.5, 0.5)):
        per_size = {}
        for size in (8, 16, 32):
            mn = size * size
            best = 0.0
            for delta in (0.0, 1.0 / mn, 1.0 / math.sqrt(mn), 1.0):
                q = ProximityQuery(alpha=alpha, beta=beta, M=size, N=size, Delta=delta)
                res = count_proximity_detailed(q)
                ratio = res.count / lemma21_denominator(q)
                ok &= math.isfinite(ratio)
                best = max(best, ratio)
            per_size[size] = best
        ok &= per_size[32] <= 4.0 * per_size[8]
        details.append(f"({alpha},{beta}): {per_size[32] / per_size[8]:.2f}x")
    elapsed = time.time() - t0
    ok &= elapsed <= 300.0
    _report(6, "proximity-count ratio stays bounded as sizes double", ok,
            f"growth {details}, {elapsed:.1f}s")


def test_07_triple_sum_bound_sanity():
    t0 = time.time()
    ok = True
    worst = 0.0
    combo = 0
    for h in (4, 8, 16):
        for m in (4, 8, 16):
            for n in (4, 8, 16):
                if h > n:
                    continue
                for x in (10.0, 100.0, 1000.0):
                    for delta in (0.0, 1.0):
                        for trial in range(10):
                            inst = ExpSumInstance(
                                X=x, H=h, M=m, N=n, delta=delta,
                                coefficient_seed=BASE_SEED + 1000 * combo + trial,
                            )
                            ratio = abs(eval_s_delta(inst)) / prop31_bound(inst, variant=1)
                            worst = max(worst, ratio)
                            ok &= ratio <= 10.0
                        combo += 1
    single = ExpSumInstance(X=1.0, H=1, M=1, N=1)
    ok &= abs(eval_s_delta(single)) / prop31_bound(single, variant=1) == 0.25
    elapsed = time.time() - t0
    _report(7, "triple sums stay below 10x the closed bound; single term = 1/4", ok,
            f"max ratio {worst:.4f}, {elapsed:.1f}s")


def test_08_constant_enclosure(enclosures, enclosure_1e9):
    t0 = time.time()
    e8 = enclosures[10**8]
    e9 = enclosure_1e9
    ok = e8.width <= 2.1e-8
    ok &= e9.width <= 2.1e-9
    ok &= e8.overlaps(e9)
    los = [enclosures[d].lo for d in (10**5, 10**6, 10**7, 10**8)]
    ok &= all(a <= b for a, b in zip(los, los[1:]))
    elapsed = time.time() - t0
    _report(8, "constant enclosure widths, overlap, monotone lower bounds", ok,
            f"w8={e8.width:.3e}, w9={e9.width:.3e}, {elapsed:.1f}s")


def test_09_error_scan_baseline(enclosures, repo_root):
    t0 = time.time()
    grid = geometric_grid(10**4, 10**9, 40)
    result = fs.error_scan(grid, enclosures[10**8])
    ok = len(result.samples) == 40
    for s in result.samples:
        ok &= abs(s.error) <= 5.0 * math.sqrt(s.x)
        ok &= math.isfinite(s.ratio_919)
    ok &= result.slope is not None and result.slope <= 0.55
    baseline = repo_root / "data" / "error_scan_baseline.csv"
    rows = [s.csv_row() for s in result.samples]
    if baseline.exists():
        with open(baseline, newline="") as fh:
            stored = list(csv.reader(fh))
        ok &= stored[0] == list(ERROR_SCAN_CSV_HEADER)
        ok &= len(stored) == 41
        for row, s in zip(stored[1:], result.samples):
            ok &= int(row[0]) == s.x
            s_stored, cx_stored = float(row[1]), float(row[2])
            ok &= abs(s_stored - s.s_lambda) <= 1e-12 * abs(s_stored)
            ok &= abs(cx_stored - s.c_times_x) <= 1e-9 * abs(cx_stored)
            # error is a difference of the two leading columns, so its
            # absolute tolerance inherits their relative budgets
            budget = 1e-9 * (abs(s_stored) + abs(cx_stored))
            ok &= abs(float(row[3]) - s.error) <= budget
            ok &= abs(float(row[4]) - s.ratio_919) <= budget / s.x ** (9 / 19)
            ok &= abs(float(row[5]) - s.ratio_half) <= budget / math.sqrt(s.x)
    else:  # first run records the baseline
        baseline.parent.mkdir(parents=True, exist_ok=True)
        with open(baseline, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ERROR_SCAN_CSV_HEADER)
            w.writerows(rows)
    elapsed = time.time() - t0
    ok &= elapsed <= 300.0
    _report(9, "error scan: |E| <= 5 sqrt(x), finite ratios, slope <= 0.55", ok,
            f"slope={result.slope:.3f}, max|E|/sqrt(x)="
            f"{max(s.ratio_half for s in result.samples):.3f}, {elapsed:.1f}s")


def test_10_dominance_certificates():
    t0 = time.time()
    half = fs.ExponentPair(F(1, 2), F(1, 2))
    expr = fs.prop41_bound(half, half)
    cert_main = fs.dominance_window(expr, expr.terms[0], F(6, 13), F(2, 3))
    leader = fs.GrowthTerm(0, F(5, 6))
    cert_cube = fs.dominance_window(
        fs.BoundExpr((leader, fs.GrowthTerm(F(-1, 3), F(2, 3)))), leader, 0, F(2, 3)
    )
    cert_raw = fs.dominance_window(
        fs.BoundExpr((leader, fs.GrowthTerm(-1, 2))), leader, 0, F(6, 7)
    )
    ok = cert_main.holds and cert_cube.holds and cert_raw.holds
    for cert in (cert_main, cert_cube, cert_raw):
        ok &= len(cert.checks) == 2 * len({c.term for c in cert.checks})
        ok &= all(isinstance(c.leader_exponent, F) for c in cert.checks)
        ok &= all(c.holds for c in cert.checks)
    elapsed = time.time() - t0
    ok &= elapsed < 1.0
    _report(10, "dominance certificates on the stated windows", ok,
            f"{elapsed:.3f}s")
