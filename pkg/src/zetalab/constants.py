"""Shared constants, computed once per precision context and cached."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpf

from .gammafn import zeta_prime_at_2
from .precision import PrecisionContext


@dataclass(frozen=True)
class Constants:
    euler_gamma: mpf
    log_2pi: mpf
    zeta_prime_2: mpf
    pi: mpf


@lru_cache(maxsize=32)
def _constants_for_bits(work_bits: int) -> Constants:
    ctx = PrecisionContext(work_bits=work_bits, abs_tol=1e-12, rel_tol=1e-12)
    with ctx.workprec():
        return Constants(
            euler_gamma=+mp.euler,
            log_2pi=mp.log(2 * mp.pi),
            zeta_prime_2=zeta_prime_at_2(ctx).value,
            pi=+mp.pi,
        )


def constants_for(ctx: PrecisionContext) -> Constants:
    return _constants_for_bits(ctx.work_bits)


def second_moment_constant(ctx: PrecisionContext) -> mpf:
    """Constant term of the second-moment polynomial: 2*gamma - 1 - log(2 pi)."""
    c = constants_for(ctx)
    with ctx.workprec():
        return 2 * c.euler_gamma - 1 - c.log_2pi


def fourth_moment_a4(ctx: PrecisionContext) -> mpf:
    """Leading fourth-moment coefficient 1/(2 pi^2)."""
    c = constants_for(ctx)
    with ctx.workprec():
        return 1 / (2 * c.pi**2)


def fourth_moment_a3(ctx: PrecisionContext) -> mpf:
    """Second fourth-moment coefficient 2(4g - 1 - log 2pi - 12 zeta'(2)/pi^2)/pi^2."""
    c = constants_for(ctx)
    with ctx.workprec():
        inner = 4 * c.euler_gamma - 1 - c.log_2pi - 12 * c.zeta_prime_2 / c.pi**2
        return 2 * inner / c.pi**2


def laplace_fourth_A(ctx: PrecisionContext) -> mpf:
    """Leading coefficient of the fourth-moment Laplace main term: 1/(2 pi^2)."""
    return fourth_moment_a4(ctx)


def laplace_fourth_B(ctx: PrecisionContext) -> mpf:
    """Second coefficient: (2 log 2pi - 6 gamma + 24 zeta'(2)/pi^2)/pi^2."""
    c = constants_for(ctx)
    with ctx.workprec():
        inner = 2 * c.log_2pi - 6 * c.euler_gamma + 24 * c.zeta_prime_2 / c.pi**2
        return inner / c.pi**2
