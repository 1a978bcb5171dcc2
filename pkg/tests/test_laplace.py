"""Laplace transforms, Kober and Atkinson comparisons."""

import math

import numpy as np
import pytest

from zetalab.config import QuadConfig
from zetalab.errors import DomainError, IllConditionedFit
from zetalab.laplace import (
    atkinson_ab,
    atkinson_expansion,
    calibrate_atkinson_cde,
    default_atkinson_cde,
    kober_main,
    laplace_moment,
    laplace_moment_grid,
)

import _frozen as F


class TestLaplaceMoment:
    def test_exponential_hook(self, ctx, cfg):
        r = laplace_moment(1, 2.0, ctx, cfg, integrand_hook=lambda t: np.ones_like(t))
        assert abs(r.value - 0.5) < 1e-8

    def test_fixture_k2(self, ctx, cfg):
        r = laplace_moment(2, 0.1, ctx, cfg)
        assert r.value == F.LAPLACE2_01
        assert abs(r.value - F.LAPLACE2_01_ORACLE) <= r.err_bound

    def test_domain_errors(self, ctx, cfg):
        with pytest.raises(DomainError):
            laplace_moment(1, -0.1, ctx, cfg)
        with pytest.raises(DomainError):
            laplace_moment(1, 0.0, ctx, cfg)
        with pytest.raises(DomainError):
            laplace_moment(3, 0.5, ctx, cfg)

    def test_complex_s_conjugate_symmetry(self, ctx, cfg):
        r1 = laplace_moment(1, complex(0.5, 0.2), ctx, cfg)
        r2 = laplace_moment(1, complex(0.5, -0.2), ctx, cfg)
        assert abs(r1.value - r2.value.conjugate()) < 1e-9

    def test_grid_matches_single_calls(self, ctx, cfg):
        grid = laplace_moment_grid(1, [0.3, 0.7], ctx, cfg)
        solo = [laplace_moment(1, s, ctx, cfg) for s in (0.3, 0.7)]
        for g, s in zip(grid, solo):
            assert g.value == s.value and g.err_bound == s.err_bound

    def test_tail_bound_scales_down_with_x(self, ctx):
        tight = QuadConfig(laplace_tail_abs=1e-10)
        loose = QuadConfig(laplace_tail_abs=1e-6)
        rt = laplace_moment(1, 0.2, ctx, tight)
        rl = laplace_moment(1, 0.2, ctx, loose)
        assert rt.t_range[1] > rl.t_range[1]
        assert abs(rt.value - rl.value) <= rl.err_bound + rt.err_bound


class TestKober:
    def test_zero_of_main_term(self, ctx):
        sigma = math.exp(0.5772156649015329) / (4 * math.pi)
        assert abs(kober_main(sigma, ctx)) < 1e-14

    def test_direct_substitution(self, ctx):
        sigma = 0.1
        expect = (0.5772156649015329 - math.log(4 * math.pi * sigma)) / (2 * math.sin(sigma))
        assert abs(kober_main(sigma, ctx) - expect) < 1e-12

    def test_domain(self, ctx):
        with pytest.raises(DomainError):
            kober_main(0.0, ctx)
        with pytest.raises(DomainError):
            kober_main(1.5, ctx)

    def test_difference_converges_to_constant(self, ctx, cfg):
        # differences from the smallest-sigma value shrink by >= 2x per step
        sig = [0.2, 0.1, 0.05, 0.02]
        res = laplace_moment_grid(1, [2 * s for s in sig], ctx, cfg)
        g = [r.value - kober_main(s, ctx) for s, r in zip(sig, res)]
        assert tuple(g) == F.KOBER_DIFFS
        e = [abs(v - g[-1]) for v in g[:-1]]
        assert e[1] <= 0.5 * e[0]
        assert e[2] <= 0.5 * e[1]


class TestAtkinson:
    def test_a_value(self, ctx):
        a, _ = atkinson_ab(ctx)
        assert abs(a - 0.050660591821168885) < 1e-15

    def test_b_variants_are_negatives(self, ctx):
        _, bp = atkinson_ab(ctx, "printed")
        _, bc = atkinson_ab(ctx, "consistent")
        assert bp == -bc
        assert abs(bp - (-0.20946977659413073)) < 1e-12

    def test_b_fixture_15_digits(self, ctx):
        # oracle: independent constant computation from gamma, log 2pi, zeta'(2)
        import mpmath

        mpmath.mp.prec = 200
        g = mpmath.mp.euler
        zp2 = mpmath.mp.zeta(2, derivative=1)
        pi2 = mpmath.mp.pi**2
        ref = float((2 * mpmath.mp.log(2 * mpmath.mp.pi) - 6 * g + 24 * zp2 / pi2) / pi2)
        _, b = atkinson_ab(ctx, "printed")
        assert abs(b - ref) < 1e-15

    def test_expansion_substitution(self, ctx):
        v = atkinson_expansion(0.01, (0.5, -1.0, 2.0), ctx)
        a, b = atkinson_ab(ctx)
        ell = math.log(100.0)
        expect = (a * ell**4 + b * ell**3 + 0.5 * ell**2 - ell + 2.0) / 0.01
        assert abs(v - expect) < 1e-9 * abs(expect)

    def test_calibration_requirements(self, ctx, cfg):
        with pytest.raises(IllConditionedFit):
            calibrate_atkinson_cde([0.01, 0.02], ctx, cfg)

    def test_packaged_default_cde(self):
        (c, d, e), variant = default_atkinson_cde()
        assert variant == "consistent"
        assert -1.0 < c < 0.0  # calibrated magnitude sanity
