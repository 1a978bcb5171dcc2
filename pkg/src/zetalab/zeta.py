"""zeta(s), the chi factor, the theta phase and the Hardy Z-function.

Two independent evaluation routes are kept:
  * Euler-Maclaurin summation (zeta_em), valid at any s != 1, reaching the
    context precision; used directly for Re s > -0.5 and through the
    functional equation otherwise.
  * The Riemann-Siegel main sum with Chebyshev-tabulated correction terms
    (hardy_z method="rs"), an asymptotic route whose error estimate scales
    like (t/2pi)^(-(2K+3)/4) for K correction terms.
hardy_z(method="auto") picks Riemann-Siegel only when its remainder estimate
meets the requested tolerance and falls back to Euler-Maclaurin otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from . import _rs_cheb
from .errors import DomainError, PoleError, PrecisionFailure
from .gammafn import complex_log_gamma, log_sin
from .precision import PrecisionContext, ValueWithError, mag

# Conservative multipliers for the Riemann-Siegel remainder model
# |R_K| <= RS_REMAINDER_COEF[K] * (t/2pi)^(-(2K+3)/4); validated against the
# Euler-Maclaurin route in the test suite.
RS_REMAINDER_COEF = (0.6, 0.3, 0.2, 0.2, 0.2)

DEFAULT_CROSSOVER_T = 30.0


@dataclass(frozen=True)
class ZetaSample:
    """zeta(1/2 + it) with its absolute error estimate."""

    t: float
    value: mpc
    abs_err: float


def zeta_em(s, ctx: PrecisionContext) -> ValueWithError:
    """zeta(s) by Euler-Maclaurin summation, error within context tolerances."""
    with ctx.workprec():
        s = mpc(s)
        if s == 1:
            raise PoleError("zeta pole at s = 1")
        if s.real < -0.5:
            refl, e1 = zeta_em(1 - s, ctx)
            ch, e2 = chi(s, ctx)
            value = ch * refl
            err = e1 * mag(ch) + e2 * mag(refl) + 4 * ctx.eps * mag(value)
            return ValueWithError(value, err)

        prec = mp.prec
        t = abs(float(s.imag))
        n_terms = max(16, int(0.30 * t) + prec // 2)
        for _ in range(4):
            out = _em_once(s, n_terms, prec)
            if out is not None:
                value, bound = out
                err = float(bound) + 8 * ctx.eps * (mag(value) + n_terms * ctx.eps)
                if err <= ctx.tolerance_for(mag(value)) or err <= ctx.abs_tol:
                    return ValueWithError(value, err)
            n_terms *= 2
        raise PrecisionFailure(
            "Euler-Maclaurin zeta did not reach tolerance at s=%s, work_bits=%d"
            % (s, ctx.work_bits)
        )


def _em_once(s: mpc, n_cut: int, prec: int):
    """One Euler-Maclaurin pass with remainder bound; None if not converging."""
    acc = mp.mpf(0)
    for n in range(1, n_cut):
        acc += mpc(n) ** (-s)
    n = mp.mpf(n_cut)
    acc += n ** (1 - s) / (s - 1) + n ** (-s) / 2

    target = mpf(2) ** (-(prec - 2))
    poch = s                      # s(s+1)...(s+2k-2), here k=1
    npow = n ** (-s - 1)
    ninv2 = 1 / (n * n)
    sigma = s.real
    prev = mp.inf
    for k in range(1, 2 * prec):
        term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * poch * npow
        at = abs(term)
        if at >= prev:
            return None
        acc += term
        prev = at
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        npow *= ninv2
        nxt = abs(mp.bernoulli(2 * k + 2) / mp.factorial(2 * k + 2) * poch * npow)
        bound = nxt * abs(s + 2 * k + 1) / (sigma + 2 * k + 1)
        if bound <= target * max(1, abs(acc)):
            return acc, bound
    return None


def chi(s, ctx: PrecisionContext) -> ValueWithError:
    """chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), via log-gamma."""
    with ctx.workprec():
        s = mpc(s)
        if s.imag == 0 and s.real == mp.floor(s.real):
            r = int(s.real)
            if r >= 1:
                raise PoleError("chi constituent pole at s = %d" % r)
            if r < 0 and r % 2 == 0:
                return ValueWithError(mpc(0), ctx.eps)  # trivial zero
        lg, lg_err = complex_log_gamma(1 - s, ctx)
        logchi = s * mp.log(2) + (s - 1) * mp.log(mp.pi) + log_sin(mp.pi * s / 2) + lg
        value = mp.exp(logchi)
        log_err = lg_err + 8 * ctx.eps * (mag(logchi) + 4)
        return ValueWithError(value, mag(value) * log_err)


def _theta_series_coeffs(nmax: int):
    """c_n = (1 - 2^(1-2n)) |B_2n| / (4n(2n-1)); theta ~ ... + sum c_n t^(1-2n)."""
    return [
        (1 - mpf(2) ** (1 - 2 * n)) * abs(mp.bernoulli(2 * n)) / (4 * n * (2 * n - 1))
        for n in range(1, nmax + 1)
    ]


def rs_theta(t, ctx: PrecisionContext, method: str = "auto") -> ValueWithError:
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi."""
    tf = float(t)
    if tf <= 0:
        raise DomainError("rs_theta requires t > 0")
    with ctx.workprec():
        t = mpf(t)
        if method in ("auto", "asymptotic") and tf >= 2:
            value = t / 2 * mp.log(t / (2 * mp.pi)) - t / 2 - mp.pi / 8
            tpow = 1 / t
            tinv2 = tpow * tpow
            prev = mp.inf
            bound = None
            for c in _theta_series_coeffs(12):
                term = c * tpow
                at = abs(term)
                if at >= prev:
                    bound = 2 * prev
                    break
                value += term
                prev = at
                tpow *= tinv2
                bound = 2 * abs(c * tpow)  # next-term estimate
                if bound <= ctx.abs_tol * 0.01:
                    break
            err = float(bound) + 4 * ctx.eps * mag(value)
            if err <= ctx.tolerance_for(mag(value)) or method == "asymptotic":
                if method == "asymptotic" and err > ctx.tolerance_for(mag(value)):
                    raise PrecisionFailure(
                        "theta asymptotic series cannot reach tolerance at t=%g" % tf
                    )
                return ValueWithError(value, err)
        # Fallback: direct log-gamma evaluation.
        lg, lg_err = complex_log_gamma(mpc(0.25, tf / 2), ctx)
        value = lg.imag - t / 2 * mp.log(mp.pi)
        return ValueWithError(value, lg_err + 4 * ctx.eps * mag(value))


def rs_remainder_estimate(t: float, n_corr: int) -> float:
    """Error-model bound for the Riemann-Siegel tail after n_corr corrections."""
    k = min(n_corr, len(RS_REMAINDER_COEF) - 1)
    a2 = t / (2 * math.pi)
    return RS_REMAINDER_COEF[k] * a2 ** (-(2 * k + 3) / 4.0)


def hardy_z(
    t,
    ctx: PrecisionContext,
    method: str = "auto",
    rs_terms: int = 4,
    crossover: float = DEFAULT_CROSSOVER_T,
) -> ValueWithError:
    """Hardy's Z(t): real, with |Z(t)| = |zeta(1/2+it)|.

    method "em" rotates the Euler-Maclaurin value of zeta(1/2+it) by
    exp(i theta); "rs" uses the Riemann-Siegel expansion; "auto" uses "em"
    below the crossover or whenever the "rs" remainder estimate exceeds the
    context tolerance.
    """
    tf = float(t)
    if tf < 0:
        raise DomainError("hardy_z requires t >= 0")
    if method not in ("auto", "em", "rs"):
        raise DomainError("unknown hardy_z method %r" % (method,))

    if method == "auto":
        if tf >= crossover and tf > 2 * math.pi * 1.01:
            rs_err = rs_remainder_estimate(tf, rs_terms)
            if rs_err <= ctx.abs_tol:
                method = "rs"
            else:
                method = "em"
        else:
            method = "em"

    if method == "rs":
        return _hardy_z_rs(tf, ctx, rs_terms)
    return _hardy_z_em(tf, ctx)


def _hardy_z_em(tf: float, ctx: PrecisionContext) -> ValueWithError:
    with ctx.workprec():
        z, z_err = zeta_em(mpc(0.5, tf), ctx)
        if tf == 0:
            return ValueWithError(z.real, z_err)
        th, th_err = rs_theta(tf, ctx)
        w = mp.expj(th) * z
        err = z_err + th_err * mag(z) + 4 * ctx.eps * mag(w)
        # Z is real: the residual imaginary part is itself an error witness.
        return ValueWithError(w.real, err + abs(float(w.imag)))


def _hardy_z_rs(tf: float, ctx: PrecisionContext, rs_terms: int) -> ValueWithError:
    if tf <= 2 * math.pi:
        raise PrecisionFailure("Riemann-Siegel main sum empty for t <= 2 pi")
    with ctx.workprec():
        t = mpf(tf)
        a = mp.sqrt(t / (2 * mp.pi))
        n_main = int(mp.floor(a))
        p = a - n_main
        th, th_err = rs_theta(tf, ctx)
        acc = mp.mpf(0)
        for n in range(1, n_main + 1):
            acc += mp.cos(th - t * mp.log(n)) / mp.sqrt(n)
        main = 2 * acc
        corr = mp.mpf(0)
        apow = mp.mpf(1)
        n_corr = min(rs_terms, _rs_cheb.N_CORRECTIONS - 1)
        for k in range(0, n_corr + 1):
            corr += mpf(_rs_cheb.eval_correction(k, float(p))) / apow
            apow *= a
        sign = 1 if n_main % 2 == 1 else -1
        value = main + sign * corr / mp.sqrt(a)
        err = (
            rs_remainder_estimate(tf, n_corr)
            + th_err * mag(main)
            + ctx.eps * (4 + 2 * n_main) * (1 + mag(value))
            + 1e-14  # Chebyshev tables are float64
        )
        return ValueWithError(value, err)


def zeta_sample(t, ctx: PrecisionContext) -> ZetaSample:
    """zeta(1/2+it) packaged with its error estimate."""
    v, err = zeta_em(mpc(0.5, float(t)), ctx)
    return ZetaSample(t=float(t), value=v, abs_err=err)
