import cmath
import math

import numpy as np
import pytest

from floorsum.arith import psi_saw
from floorsum.prng import SplitMix64
from floorsum.vaaler import (
    fejer_bound,
    fejer_bound_values,
    phi_weight,
    psi_vaaler,
    psi_vaaler_values,
    vaaler_check,
)


def fejer_oracle(x: float, h_max: int) -> float:
    """Independent complex-exponential evaluation of the error majorant."""
    h1 = h_max + 1
    acc = 0 + 0j
    for h in range(-h_max, h_max + 1):
        acc += (1 - abs(h) / h1) * cmath.exp(2j * math.pi * h * x)
    return acc.real / (2 * h1)


class TestPhiWeight:
    def test_limit_at_zero(self):
        assert phi_weight(0.0) == 1.0

    def test_half(self):
        assert phi_weight(0.5) == pytest.approx(0.5, abs=1e-15)

    def test_quarter(self):
        assert phi_weight(0.25) == pytest.approx(3 * math.pi / 16 + 0.25, abs=1e-14)

    def test_even_and_bounded_on_grid(self):
        for i in range(1, 200):
            t = i / 200.0
            v = phi_weight(t)
            assert v == phi_weight(-t)
            assert 0.0 < v <= 1.0

    def test_domain(self):
        with pytest.raises(ValueError):
            phi_weight(1.0)
        with pytest.raises(ValueError):
            phi_weight(-1.2)


class TestPsiVaaler:
    def test_integer_x_vanishes(self):
        for h_max in (1, 10, 100):
            for x in (0.0, 1.0, 5.0, -3.0):
                assert abs(psi_vaaler(x, h_max)) < 1e-10

    def test_half_x_vanishes(self):
        assert abs(psi_vaaler(0.5, 10)) < 1e-12

    def test_within_bound_at_sample_point(self):
        x = 0.3
        err = abs(psi_saw(x) - psi_vaaler(x, 100))
        assert err <= fejer_bound(x, 100) + 1e-12

    def test_invalid_h(self):
        with pytest.raises(ValueError):
            psi_vaaler(0.3, 0)


class TestFejerBound:
    def test_integer_peak_is_half(self):
        assert fejer_bound(0.0, 7) == 0.5
        assert fejer_bound(3.0, 12) == pytest.approx(0.5, abs=1e-11)

    def test_h1_x_half(self):
        assert fejer_bound(0.5, 1) == pytest.approx(0.0, abs=1e-30)

    def test_closed_form_equals_direct_sum(self):
        rng = SplitMix64(1203)
        for _ in range(200):
            x = rng.next_float()
            h_max = (1, 7, 40, 301)[rng.next_below(4)]
            closed = fejer_bound(x, h_max)
            assert abs(closed - fejer_oracle(x, h_max)) < 1e-12

    def test_nonnegative_and_periodic(self):
        rng = SplitMix64(88)
        for _ in range(500):
            x = rng.next_below(1 << 30) / (1 << 30)  # dyadic: x+1 exact
            v = fejer_bound(x, 25)
            assert v >= 0.0
            assert fejer_bound(x + 1.0, 25) == pytest.approx(v, abs=1e-12)

    def test_near_integer_stability(self):
        # values just off an integer must stay close to the peak 1/2
        for eps in (1e-13, 1e-11, 1e-10):
            v = fejer_bound(1.0 + eps, 100)
            assert 0.49 < v <= 0.5 + 1e-12

    def test_mean_over_midpoint_grid(self):
        for h_max in (1, 10, 100, 1000):
            n = 2 * (h_max + 1) + 1
            xs = (np.arange(n) + 0.5) / n
            mean = float(np.mean(fejer_bound_values(xs, h_max)))
            assert abs(mean - 1 / (2 * h_max + 2)) <= 0.01 / (2 * h_max + 2)


class TestCoreInequality:
    @pytest.mark.parametrize("h_max", [1, 10, 100, 1000])
    def test_seeded_batch(self, h_max):
        res = vaaler_check(h_max, 2000, seed=515 + h_max)
        assert res.violations == 0 and res.passed
        assert res.min_slack > -1e-10

    def test_batch_matches_scalar(self):
        xs = np.array([0.1, 0.25, 0.37, 0.9])
        vals = psi_vaaler_values(xs, 50)
        for x, v in zip(xs, vals):
            assert abs(psi_vaaler(float(x), 50) - v) < 1e-13

    def test_integer_convention(self):
        # at integers psi = -1/2 and psi_H = 0; the bound peaks at 1/2
        for h_max in (1, 10, 100):
            gap = abs(psi_saw(4.0) - psi_vaaler(4.0, h_max))
            assert gap <= fejer_bound(4.0, h_max) + 1e-10
