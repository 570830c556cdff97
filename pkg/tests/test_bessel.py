from fractions import Fraction

import numpy as np
import pytest

from ladder_fpp.bessel import (
    BoundedReal,
    EULER_GAMMA,
    PI,
    bessel_j,
    bessel_y,
    harmonic,
    upsilon,
    upsilon_analytic,
    upsilon_run,
)

from oracles import j_oracle, j_partial

# Correctly rounded doubles, frozen from the rational oracle / 50-digit evaluation.
J0_REF = 0.22389077914123567
J3_REF = 0.12894324947440206
Y0_REF = 0.5103756726497451
Y1_REF = -0.10703243154093754
PI0_QUOTED = 0.4647184275  # quoted to 10 decimals; true value is ~1.3e-10 above


class TestBesselJ:
    def test_j0_value(self):
        v = bessel_j(0, 1e-14)
        assert v.err <= 1e-14
        assert abs(v.value - J0_REF) <= v.err + 1e-16

    @pytest.mark.parametrize("n", range(0, 21))
    def test_matches_rational_oracle(self, n):
        ref, bound = j_oracle(n)
        v = bessel_j(n, 1e-14)
        assert abs(v.value - float(ref)) <= v.err + float(bound) + 1e-17

    def test_pi0_combination(self):
        j0 = bessel_j(0, 1e-14)
        j3 = bessel_j(3, 1e-14)
        p0 = j0 / (2 * j3 + j0)
        assert abs(p0.value - PI0_QUOTED) <= 1e-9  # 10-decimal reference value
        assert abs(p0.value - 0.4647184276286947) <= 1e-13

    def test_large_order_tiny(self):
        v = bessel_j(50, 1e-14)
        assert abs(v.value) < 1e-60
        assert v.err <= 1e-14

    @pytest.mark.parametrize("bad", [0.0, -1e-9])
    def test_rejects_bad_tol(self, bad):
        with pytest.raises(ValueError):
            bessel_j(0, bad)
        with pytest.raises(ValueError):
            bessel_y(0, bad)

    def test_unreachable_tol_raises(self):
        with pytest.raises(ValueError):
            bessel_j(0, 1e-20)

    @pytest.mark.parametrize("n", range(0, 21))
    def test_alternating_containment(self, n):
        # The true value lies between every pair of consecutive partial sums.
        hi_ref = j_partial(n, 60)  # error < 1/(60!^2), negligible vs the gaps
        for k in range(1, 12):
            lo, hi = sorted((j_partial(n, k), j_partial(n, k + 1)))
            assert lo <= hi_ref <= hi

    @pytest.mark.parametrize("n", [0, 1, 3, 7])
    def test_two_tolerances_agree(self, n):
        a = bessel_j(n, 1e-10)
        b = bessel_j(n, 1e-12)
        assert abs(a.value - b.value) <= 1e-10

    def test_compensation_flag(self):
        a = bessel_j(0, 1e-14, compensated=True)
        b = bessel_j(0, 1e-14, compensated=False)
        assert abs(a.value - b.value) <= b.err + a.err


class TestBesselY:
    def test_y0_value(self):
        v = bessel_y(0, 1e-12)
        assert v.err <= 1e-12
        assert abs(v.value - Y0_REF) <= v.err + 1e-15

    def test_wronskian_normalizes_y1(self):
        j0 = bessel_j(0, None)
        j1 = bessel_j(1, None)
        y0 = bessel_y(0, 1e-12)
        y1 = bessel_y(1, 1e-12)
        w = PI * (j1 * y0 - j0 * y1)
        assert abs(w.value - 1.0) <= w.err
        assert abs(y1.value - Y1_REF) <= y1.err + 1e-15

    def test_y5_sign_and_growth(self):
        y4 = bessel_y(4, 1e-10)
        y5 = bessel_y(5, 1e-10)
        assert y5.value < 0
        assert abs(y5.value) > abs(y4.value)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_wronskian_identity(self, n):
        jn = bessel_j(n, None)
        jn1 = bessel_j(n + 1, None)
        yn = bessel_y(n, None)
        yn1 = bessel_y(n + 1, None)
        w = PI * (jn1 * yn - jn * yn1)
        assert abs(w.value - 1.0) <= w.err
        assert abs(w.value - 1.0) <= 1e-9


class TestUpsilon:
    @pytest.mark.parametrize("m", [0, 1, 3, 7])
    def test_diagonal_zero(self, m):
        assert upsilon(m, m) == 0

    def test_table_values(self):
        assert upsilon(5, 0) == 7
        assert 2 * upsilon(7, 3) + upsilon(7, 0) == 411
        assert [upsilon(n, 0) for n in range(1, 8)] == [1, 1, 1, 2, 7, 33, 191]
        assert [2 * upsilon(n, 3) + upsilon(n, 0) for n in range(1, 8)] == [
            -3, -1, 1, 4, 15, 71, 411,
        ]

    @pytest.mark.parametrize("n", range(0, 11))
    def test_superdiagonal_one(self, n):
        assert upsilon(n + 1, n) == 1

    def test_three_term_recursion_exact(self):
        for m in range(0, 6):
            vals = upsilon_run(m, m + 40)
            for i, n in enumerate(range(m + 1, m + 39)):
                assert vals[i + 2] == n * vals[i + 1] - vals[i]

    def test_downward_values(self):
        assert upsilon(2, 3) == -1
        assert upsilon(1, 3) == -2
        assert upsilon(3, 8) == -751

    @pytest.mark.parametrize("m", range(0, 6))
    def test_definition_agreement(self, m):
        for n in range(m, 13):
            ana = upsilon_analytic(n, m)
            assert abs(ana.value - upsilon(n, m)) <= ana.err, (n, m)

    def test_run_matches_pointwise(self):
        run = upsilon_run(2, 30)
        assert run == [upsilon(n, 2) for n in range(2, 31)]

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            upsilon(-1, 0)
        with pytest.raises(ValueError):
            upsilon(2, -1)


class TestHarmonic:
    def test_small_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(4) == Fraction(25, 12)

    @pytest.mark.parametrize("m", [2, 5, 17])
    def test_direct_summation(self, m):
        assert harmonic(m) == sum(Fraction(1, j) for j in range(1, m + 1))


class TestBoundedReal:
    def test_err_nonnegative(self):
        with pytest.raises(ValueError):
            BoundedReal(1.0, -1e-30)

    def test_interval_containment_randomized(self):
        # For random operands, the exact result on worst-case interval
        # corners stays inside the propagated bound.
        rng = np.random.default_rng(42)
        for _ in range(200):
            av, bv = rng.normal(size=2) * 3
            ae, be = rng.random(2) * 1e-6
            a = BoundedReal(av, ae)
            b = BoundedReal(bv, be)
            for op in ("add", "sub", "mul", "div"):
                if op == "div" and abs(bv) <= be * 2:
                    continue
                got = {
                    "add": a + b,
                    "sub": a - b,
                    "mul": a * b,
                    "div": a / b,
                }[op]
                fn = {
                    "add": lambda x, y: x + y,
                    "sub": lambda x, y: x - y,
                    "mul": lambda x, y: x * y,
                    "div": lambda x, y: x / y,
                }[op]
                for ca in (av - ae, av + ae):
                    for cb in (bv - be, bv + be):
                        # 5e-15 covers rounding inside this corner evaluation
                        assert abs(fn(ca, cb) - got.value) <= got.err + 5e-15

    def test_scalar_and_fraction_operands(self):
        x = BoundedReal(1.5, 1e-12)
        assert abs((x * 2).value - 3.0) <= (x * 2).err + 1e-15
        y = x * Fraction(4, 3)
        assert abs(y.value - 2.0) <= y.err
        z = 1 / BoundedReal(2.0, 0.0)
        assert z.value == 0.5

    def test_division_by_zero_interval(self):
        with pytest.raises(ZeroDivisionError):
            BoundedReal(1.0, 0.0) / BoundedReal(1e-9, 1e-8)

    def test_euler_gamma_digits(self):
        assert abs(EULER_GAMMA.value - 0.5772156649015329) < 1e-16
