"""Sign-change and exceedance scans for E1, E2 and the integral of E2.

Values are sampled on the panel-boundary grid (spacing about half the local
zero gap); zero crossings between adjacent samples are refined by bisection
with local re-integration, never by interpolating the error term itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import QuadConfig
from .errors import DomainError
from .moments import (
    MomentPolynomial,
    default_p4,
    integral_of_t_poly,
    main_term,
    p1_exact,
)
from .precision import DEFAULT_CTX, PrecisionContext
from .quadrature import get_accumulator

TARGETS = ("e1", "e2", "intE2")


@dataclass(frozen=True)
class SignChangeReport:
    """Exceedance points and refined zero crossings over a scanned window."""

    target: str
    t_range: tuple
    threshold_exponent: float
    amplitude: float
    exceed_plus: tuple   # (t, value) with value >  A t^exponent
    exceed_minus: tuple  # (t, value) with value < -A t^exponent
    crossings: tuple     # refined zeros of the scanned function
    grid_points: int


def _target_values(target: str, cfg: QuadConfig, ctx, t0, t1, poly):
    """(grid, values, point_evaluator) for the named error-term function."""
    if target == "e1":
        acc = get_accumulator(1, cfg)
        poly = poly or p1_exact(ctx)
        bs, cv, _, _ = acc.boundary_grid(t0, t1)
        logs = np.log(np.maximum(bs, 1e-300))
        vals = cv - bs * np.polyval(np.array(poly.coeffs), logs)

        def point(t):
            v = acc.cumulative_to(t)[0]
            return v - main_term(1, t, poly)

        return bs, vals, point
    if target == "e2":
        acc = get_accumulator(2, cfg)
        poly = poly or default_p4(ctx)
        bs, cv, _, _ = acc.boundary_grid(t0, t1)
        logs = np.log(np.maximum(bs, 1e-300))
        vals = cv - bs * np.polyval(np.array(poly.coeffs), logs)

        def point(t):
            v = acc.cumulative_to(t)[0]
            return v - main_term(2, t, poly)

        return bs, vals, point
    if target == "intE2":
        acc = get_accumulator(2, cfg)
        poly = poly or default_p4(ctx)
        bs, cv, cu, _ = acc.boundary_grid(t0, t1)
        closed = np.array([integral_of_t_poly(b, poly) for b in bs])
        vals = bs * cv - cu - closed

        def point(t):
            v, vu, _, _ = acc.cumulative_to(t)
            return t * v - vu - integral_of_t_poly(t, poly)

        return bs, vals, point
    raise DomainError("unknown scan target %r" % (target,))


def _bisect_zero(point, a, b, fa, fb, rel_tol=1e-10, max_iter=80):
    for _ in range(max_iter):
        if b - a <= rel_tol * max(1.0, abs(a)):
            break
        m = 0.5 * (a + b)
        fm = point(m)
        if fm == 0.0:
            return m
        if (fa < 0) != (fm < 0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def sign_change_scan(
    target: str,
    t0: float,
    t1: float,
    amplitude: float,
    threshold_exponent: float,
    ctx: PrecisionContext = DEFAULT_CTX,
    cfg: QuadConfig = QuadConfig(),
    poly: MomentPolynomial | None = None,
    fn=None,
    refine: bool = True,
    max_points: int = 2000,
) -> SignChangeReport:
    """Scan [t0, t1] for +/- A t^e exceedances and sign changes.

    fn, when given, replaces the error-term evaluation (test hook): it must
    map an ndarray of t to values; crossings are then not refined.
    """
    if not (0 <= t0 < t1):
        raise DomainError("invalid scan range [%r, %r]" % (t0, t1))
    if target not in TARGETS:
        raise DomainError("unknown scan target %r" % (target,))
    if fn is not None:
        bs = np.linspace(t0, t1, 4096)
        vals = fn(bs)
        point = None
    else:
        bs, vals, point = _target_values(target, cfg, ctx, t0, t1, poly)

    thresh = amplitude * np.power(np.maximum(bs, 1e-300), threshold_exponent)
    plus_idx = np.nonzero(vals > thresh)[0]
    minus_idx = np.nonzero(vals < -thresh)[0]

    def thin(idx):
        if len(idx) <= max_points:
            return idx
        step = int(math.ceil(len(idx) / max_points))
        return idx[::step]

    exceed_plus = tuple((float(bs[i]), float(vals[i])) for i in thin(plus_idx))
    exceed_minus = tuple((float(bs[i]), float(vals[i])) for i in thin(minus_idx))

    sign = np.sign(vals)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    crossings = []
    for i in flips:
        if refine and point is not None:
            crossings.append(
                _bisect_zero(point, float(bs[i]), float(bs[i + 1]), float(vals[i]), float(vals[i + 1]))
            )
        else:
            a, b = float(bs[i]), float(bs[i + 1])
            fa, fb = float(vals[i]), float(vals[i + 1])
            crossings.append(a - fa * (b - a) / (fb - fa))
    return SignChangeReport(
        target=target,
        t_range=(t0, t1),
        threshold_exponent=threshold_exponent,
        amplitude=amplitude,
        exceed_plus=exceed_plus,
        exceed_minus=exceed_minus,
        crossings=tuple(crossings),
        grid_points=len(bs),
    )


def e2_zero_gap_table(t0: float, t1: float, ctx=DEFAULT_CTX, cfg=QuadConfig(), poly=None):
    """Rows (n, u_n, u_{n+1} - u_n, log gap / log u_n) for zeros of E2 in [t0, t1]."""
    report = sign_change_scan("e2", t0, t1, amplitude=math.inf, threshold_exponent=0.0,
                              ctx=ctx, cfg=cfg, poly=poly)
    zeros = report.crossings
    rows = []
    for n in range(len(zeros) - 1):
        gap = zeros[n + 1] - zeros[n]
        rows.append((n + 1, zeros[n], gap, math.log(gap) / math.log(zeros[n])))
    return rows
