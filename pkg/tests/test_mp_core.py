"""Precision contexts, log-gamma, unit exponentials, zeta'(2)."""

import math

import mpmath
import numpy as np
import pytest
from mpmath import mp, mpc, mpf

from zetalab.constants import constants_for
from zetalab.errors import DomainError, PoleError
from zetalab.gammafn import complex_log_gamma, e_of, zeta_prime_at_2
from zetalab.precision import PrecisionContext


class TestPrecisionContext:
    def test_invariants_enforced(self):
        with pytest.raises(DomainError):
            PrecisionContext(work_bits=32)
        with pytest.raises(DomainError):
            PrecisionContext(abs_tol=0.0)
        with pytest.raises(DomainError):
            PrecisionContext(rel_tol=1.5)

    def test_defaults_valid(self, ctx):
        assert ctx.work_bits >= 64
        assert 0 < ctx.abs_tol < 1 and 0 < ctx.rel_tol < 1

    def test_complex_value_conjugation_involution(self, ctx):
        with ctx.workprec():
            z = mpc("1.25", "-3.5")
            assert mp.conj(mp.conj(z)) == z
            assert abs(abs(z) ** 2 - (z.real**2 + z.imag**2)) <= ctx.rel_tol * abs(z) ** 2


class TestComplexLogGamma:
    def test_at_one(self, ctx):
        v, err = complex_log_gamma(1, ctx)
        assert abs(v) <= max(err, 1e-30)

    def test_at_half(self, ctx):
        v, err = complex_log_gamma(0.5, ctx)
        with ctx.workprec():
            assert abs(v - mp.log(mp.sqrt(mp.pi))) < 1e-30

    @pytest.mark.parametrize("kappa", [1.0, 5.0, 9.5, 20.0])
    def test_reflection_product(self, ctx, kappa):
        # Gamma(1/2+ik) Gamma(1/2-ik) = pi / cosh(pi k)
        v1, _ = complex_log_gamma(mpc(0.5, kappa), ctx)
        v2, _ = complex_log_gamma(mpc(0.5, -kappa), ctx)
        with ctx.workprec():
            lhs = mp.exp(v1 + v2) * mp.cosh(mp.pi * kappa) / mp.pi
            assert abs(lhs - 1) < 1e-20

    def test_pole_rejected(self, ctx):
        for z in (0, -1, -7):
            with pytest.raises(PoleError):
                complex_log_gamma(z, ctx)

    def test_recurrence_property_random_grid(self, ctx, rng):
        # exp(lg(z+1)) = z exp(lg(z)) on 100 random points, |z| <= 20
        for _ in range(100):
            re = rng.uniform(-20, 20)
            im = rng.uniform(-20, 20)
            if abs(im) < 0.1 and re <= 0.5:
                im = 0.5  # stay clear of the pole line
            z = mpc(re, im)
            v1, e1 = complex_log_gamma(z, ctx)
            v2, e2 = complex_log_gamma(z + 1, ctx)
            with ctx.workprec():
                lhs = mp.exp(v2)
                rhs = z * mp.exp(v1)
                assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_matches_mpmath(self, ctx, rng):
        mp.prec = 160
        for _ in range(25):
            z = mpc(rng.uniform(0.1, 30), rng.uniform(-30, 30))
            v, err = complex_log_gamma(z, ctx)
            ref = mpmath.loggamma(z)
            assert abs(v - ref) <= max(err, 1e-30)


class TestEOf:
    @pytest.mark.parametrize(
        "x,expect",
        [(0.0, 1 + 0j), (0.5, -1 + 0j), (2.0 / 3.0, complex(-0.5, -math.sqrt(3) / 2))],
    )
    def test_unit_circle_values(self, ctx, x, expect):
        v, err = e_of(mpf(2) / 3 if x == 2.0 / 3.0 else x, ctx)
        assert abs(complex(v) - expect) < 1e-15

    def test_modulus_and_periodicity(self, ctx, rng):
        for _ in range(50):
            x = mpf(rng.uniform(-50, 50))
            v, _ = e_of(x, ctx)
            w, _ = e_of(x + 1, ctx)
            assert abs(abs(v) - 1) <= 1e-25
            assert abs(v - w) <= 1e-25


class TestZetaPrimeAtTwo:
    def test_against_partial_sum_oracle(self, ctx):
        # oracle: direct partial sum to 1e6 plus Euler-Maclaurin tail correction
        n = np.arange(2, 10**6, dtype=float)
        partial = float(np.sum(np.log(n) / n**2))
        big_n = 1e6
        log_n = math.log(big_n)
        tail = (log_n + 1) / big_n + log_n / (2 * big_n**2)
        oracle = -(partial + tail)
        v, err = zeta_prime_at_2(ctx)
        assert abs(float(v) - oracle) < 1e-11

    def test_sign_negative(self, ctx):
        assert zeta_prime_at_2(ctx).value < 0

    def test_cross_context_agreement_25_digits(self):
        v96 = zeta_prime_at_2(PrecisionContext(96, 1e-12, 1e-12)).value
        v160 = zeta_prime_at_2(PrecisionContext(160, 1e-12, 1e-12)).value
        assert abs(mpf(v96) - mpf(v160)) < mpf(10) ** (-25)

    def test_matches_mpmath_derivative(self, ctx):
        mp.prec = 160
        ref = mp.zeta(2, derivative=1)
        assert abs(zeta_prime_at_2(ctx).value - ref) < 1e-35


class TestConstants:
    def test_euler_gamma_value(self, ctx):
        c = constants_for(ctx)
        assert abs(float(c.euler_gamma) - 0.5772156649015329) < 1e-15

    def test_cached_identity(self, ctx):
        assert constants_for(ctx) is constants_for(ctx)

    def test_zeta_prime_2_consistent(self, ctx):
        c = constants_for(ctx)
        assert abs(c.zeta_prime_2 - zeta_prime_at_2(ctx).value) == 0
