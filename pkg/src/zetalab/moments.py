"""Moment integrals, the explicit polynomials and the error terms E1/E2.

Covers: integrate_moment, main_term, error_term, the Gaussian-smoothed local
fourth moment, the closed-form integral of t*P4(log t), the integrated and
mean-squared E2, and least-squares calibration of the three fourth-moment
polynomial coefficients the literature does not display here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .config import QuadConfig
from .constants import (
    constants_for,
    fourth_moment_a3,
    fourth_moment_a4,
    second_moment_constant,
)
from .errors import DomainError, IllConditionedFit
from .precision import DEFAULT_CTX, PrecisionContext
from .quadrature import IntegralResult, PanelBatch, get_accumulator, panel_width
from .zkernel import moment_integrand

PAPER_EXACT = "paper-exact"
CALIBRATED = "calibrated"
USER = "user-supplied"


@dataclass(frozen=True)
class MomentPolynomial:
    """P_{k^2} coefficients, highest degree first, with per-coefficient provenance."""

    k: int
    coeffs: tuple
    provenance: tuple
    fit: "FitDiagnostics | None" = None

    def __post_init__(self):
        if self.k not in (1, 2):
            raise DomainError("moment polynomial defined for k in {1, 2}")
        if len(self.coeffs) != self.k**2 + 1 or len(self.provenance) != len(self.coeffs):
            raise DomainError("coefficient/provenance length must be k^2 + 1")

    def eval(self, y: float) -> float:
        acc = 0.0
        for c in self.coeffs:
            acc = acc * y + c
        return acc

    def all_paper_exact(self) -> bool:
        return all(p == PAPER_EXACT for p in self.provenance)


@dataclass(frozen=True)
class FitDiagnostics:
    residual_norm: float
    split_drift: tuple
    grid_size: int
    grid_span: float


def p1_exact(ctx: PrecisionContext = DEFAULT_CTX) -> MomentPolynomial:
    """P1(y) = y + 2*gamma - 1 - log(2 pi), both coefficients exact."""
    return MomentPolynomial(
        k=1,
        coeffs=(1.0, float(second_moment_constant(ctx))),
        provenance=(PAPER_EXACT, PAPER_EXACT),
    )


def p4_polynomial(
    lower=(0.0, 0.0, 0.0),
    lower_provenance=USER,
    ctx: PrecisionContext = DEFAULT_CTX,
    fit: FitDiagnostics | None = None,
) -> MomentPolynomial:
    """P4 with exact a4, a3 and supplied lower-order coefficients (c2, c1, c0)."""
    a4 = float(fourth_moment_a4(ctx))
    a3 = float(fourth_moment_a3(ctx))
    c2, c1, c0 = (float(c) for c in lower)
    return MomentPolynomial(
        k=2,
        coeffs=(a4, a3, c2, c1, c0),
        provenance=(PAPER_EXACT, PAPER_EXACT) + (lower_provenance,) * 3,
        fit=fit,
    )


_DEFAULT_P4_CACHE: dict = {}


def default_p4(ctx: PrecisionContext = DEFAULT_CTX) -> MomentPolynomial:
    """Packaged calibrated P4 (lower coefficients fitted once and persisted)."""
    key = ctx.work_bits
    poly = _DEFAULT_P4_CACHE.get(key)
    if poly is None:
        text = resources.files("zetalab.data").joinpath("p4_default.txt").read_text()
        lower = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lower.append(float(line.split(",")[1]))
        if len(lower) != 3:
            raise DomainError("p4_default.txt must carry exactly c2, c1, c0")
        poly = p4_polynomial(tuple(lower), CALIBRATED, ctx)
        _DEFAULT_P4_CACHE[key] = poly
    return poly


def main_term(k: int, t_upper: float, poly: MomentPolynomial) -> float:
    """T * P_{k^2}(log T), Horner evaluation."""
    if poly.k != k:
        raise DomainError("polynomial is for k=%d, not k=%d" % (poly.k, k))
    if t_upper <= 0:
        return 0.0
    return t_upper * poly.eval(math.log(t_upper))


def integrate_moment(
    k: int, a: float, b: float, ctx: PrecisionContext = DEFAULT_CTX, cfg: QuadConfig = QuadConfig()
) -> IntegralResult:
    """Adaptive panel quadrature of |Z(t)|^{2k} over [a, b]."""
    if k not in (1, 2, 6):
        raise DomainError("k must be in {1, 2, 6}")
    if a < 0 or b < a:
        raise DomainError("invalid range [%r, %r]" % (a, b))
    if a == b:
        return IntegralResult(0.0, 0.0, 0, (a, b))
    acc = get_accumulator(k, cfg)
    vb, _, eb, _ = acc.cumulative_to(b)
    va, _, ea, _ = acc.cumulative_to(a)
    panels = acc.n_panels_to(b) - acc.n_panels_to(a) + 1
    return IntegralResult(vb - va, (eb - ea) + 2 * ea, panels, (a, b))


@dataclass(frozen=True)
class ErrorTermResult:
    value: float
    err_bound: float
    poly: MomentPolynomial


def error_term(
    k: int,
    t_upper: float,
    ctx: PrecisionContext = DEFAULT_CTX,
    cfg: QuadConfig = QuadConfig(),
    poly: MomentPolynomial | None = None,
) -> ErrorTermResult:
    """E_k(T) = int_0^T |Z|^{2k} - T P_{k^2}(log T), with combined error bound."""
    if k == 1:
        poly = poly or p1_exact(ctx)
        if not poly.all_paper_exact():
            raise DomainError("E1 must use only paper-exact coefficients")
    elif k == 2:
        poly = poly or default_p4(ctx)
    else:
        raise DomainError("error term defined for k in {1, 2}")
    if t_upper == 0:
        return ErrorTermResult(0.0, 0.0, poly)
    acc = get_accumulator(k, cfg)
    v, _, e, _ = acc.cumulative_to(t_upper)
    return ErrorTermResult(v - main_term(k, t_upper, poly), e, poly)


def smoothed_fourth(
    t_center: float,
    delta: float,
    ctx: PrecisionContext = DEFAULT_CTX,
    cfg: QuadConfig = QuadConfig(),
    integrand_hook=None,
) -> IntegralResult:
    """Gaussian-smoothed local fourth moment
    (1/(delta sqrt(pi))) int |zeta(1/2 + i(T+t))|^4 exp(-t^2/delta^2) dt,
    truncated at |t| <= W delta with the tail folded into the error bound."""
    if t_center <= 1.0 or math.log(t_center) <= 0:
        raise DomainError("invalid-delta: smoothing requires T > 1")
    if not (0 < delta <= t_center / math.log(t_center)):
        raise DomainError(
            "invalid-delta: need 0 < delta <= T/log T = %.6g" % (t_center / math.log(t_center))
        )
    w_win = cfg.window_w
    lo = t_center - w_win * delta
    hi = t_center + w_win * delta

    if integrand_hook is None:
        def f_df(u):
            return moment_integrand(np.abs(u), 2, cfg.t_switch, cfg.rs_terms)
    else:
        def f_df(u):
            return integrand_hook(u), np.zeros_like(u)

    inv = 1.0 / (delta * math.sqrt(math.pi))

    def weighted(u):
        f, df = f_df(u)
        g = np.exp(-((u - t_center) / delta) ** 2)
        return f * g * inv, df * g * inv

    batch = PanelBatch(weighted, cfg)
    bounds = [max(lo, 0.0)]
    while bounds[-1] < hi:
        w = min(panel_width(bounds[-1], cfg), delta / 6.0)
        bounds.append(bounds[-1] + w)
    val, _, err, _ = batch.run(bounds[:-1], bounds[1:])
    value = float(np.sum(val))
    err_total = float(np.sum(err))

    if lo < 0.0:
        # Reflected contribution from u < 0 (|zeta(1/2+iu)| is even in u).
        def weighted_neg(u):
            f, df = f_df(u)
            g = np.exp(-((u + t_center) / delta) ** 2)
            return f * g * inv, df * g * inv

        nbounds = [0.0]
        while nbounds[-1] < -lo:
            w = min(panel_width(nbounds[-1], cfg), delta / 6.0)
            nbounds.append(nbounds[-1] + w)
        nbatch = PanelBatch(weighted_neg, cfg)
        nval, _, nerr, _ = nbatch.run(nbounds[:-1], nbounds[1:])
        value += float(np.sum(nval))
        err_total += float(np.sum(nerr))

    # Truncation: |zeta|^4 majorized by cmaj (1 + log^4) near the window.
    majorant = cfg.laplace_cmaj * (1.0 + max(math.log(hi), 1.0) ** 4)
    tail = majorant * math.erfc(w_win)
    return IntegralResult(value, err_total + tail, len(bounds) - 1, (lo, hi))


def integral_of_t_poly(t_upper: float, poly: MomentPolynomial) -> float:
    """Closed form of int_0^T t P(log t) dt via I_j = T^2/2 log^j T - (j/2) I_{j-1}."""
    if t_upper <= 0:
        return 0.0
    y = math.log(t_upper)
    half_t2 = 0.5 * t_upper * t_upper
    deg = len(poly.coeffs) - 1
    i_vals = [half_t2]
    for j in range(1, deg + 1):
        i_vals.append(half_t2 * y**j - 0.5 * j * i_vals[j - 1])
    return sum(c * i_vals[deg - idx] for idx, c in enumerate(poly.coeffs))


def integral_of_e2(
    t_upper: float,
    ctx: PrecisionContext = DEFAULT_CTX,
    cfg: QuadConfig = QuadConfig(),
    poly: MomentPolynomial | None = None,
) -> IntegralResult:
    """int_0^T E2(t) dt in a single pass:
    T int_0^T f - int_0^T u f(u) du - int_0^T t P4(log t) dt."""
    poly = poly or default_p4(ctx)
    if t_upper <= 0:
        return IntegralResult(0.0, 0.0, 0, (0.0, max(t_upper, 0.0)))
    acc = get_accumulator(2, cfg)
    v, vu, e, eu = acc.cumulative_to(t_upper)
    value = t_upper * v - vu - integral_of_t_poly(t_upper, poly)
    return IntegralResult(value, t_upper * e + eu, acc.n_panels_to(t_upper) + 1, (0.0, t_upper))


def _e2_on_grid(bs, cum_v, poly):
    logs = np.log(np.maximum(bs, 1e-300))
    main = bs * np.polyval(np.array(poly.coeffs), logs)
    main[bs == 0.0] = 0.0
    return cum_v - main


def mean_square_e2(
    t_upper: float,
    ctx: PrecisionContext = DEFAULT_CTX,
    cfg: QuadConfig = QuadConfig(),
    poly: MomentPolynomial | None = None,
    snapshots=None,
):
    """int_0^T E2(t)^2 dt with E2 re-integrated locally inside every panel.

    Returns (IntegralResult, ratio_table) where ratio_table has one row
    (T, integral, integral/T^2) per requested snapshot (always including T).
    """
    poly = poly or default_p4(ctx)
    if t_upper <= 0:
        return IntegralResult(0.0, 0.0, 0, (0.0, 0.0)), []
    snaps = sorted(set(list(snapshots or []) + [t_upper]))
    if any(s <= 0 or s > t_upper for s in snaps):
        raise DomainError("snapshots must lie in (0, T]")
    acc = get_accumulator(2, cfg)
    acc.ensure(t_upper)
    pv, _, pe, _ = acc.prefix()
    bounds = np.array(acc.bounds)
    n_panels = acc.n_panels_to(t_upper)

    from .quadrature import gl_nodes

    x8, w8 = gl_nodes(8)
    x16, w16 = gl_nodes(16)
    # Unified ascending node set; E2 at each node via cumulative sub-integrals.
    xu = np.concatenate([x8, x16])
    order = np.argsort(xu, kind="stable")
    xu_sorted = xu[order]
    inv_order = np.argsort(order, kind="stable")

    total = 0.0
    total_err = 0.0
    snap_vals = {}
    snap_idx = 0
    chunk = 256
    cum_err_at_T = float(pe[n_panels]) if n_panels < len(pv) else float(pe[-1])

    i = 0
    while i < n_panels:
        j = min(i + chunk, n_panels)
        a = bounds[i:j]
        b = bounds[i + 1 : j + 1]
        half = 0.5 * (b - a)
        nodes = a[:, None] + half[:, None] * (xu_sorted[None, :] + 1.0)
        base = pv[i:j]

        # Sub-segment increments between consecutive sorted nodes.
        seg_l = np.concatenate([a[:, None], nodes[:, :-1]], axis=1)
        seg_r = nodes
        sh = 0.5 * (seg_r - seg_l)
        sm = 0.5 * (seg_r + seg_l)
        pts = sm[:, :, None] + sh[:, :, None] * x8[None, None, :]
        f, df = moment_integrand(pts.ravel(), 2, cfg.t_switch, cfg.rs_terms)
        f = f.reshape(pts.shape)
        inc = sh * np.sum(w8 * f, axis=2)
        cum_nodes = base[:, None] + np.cumsum(inc, axis=1)

        e2_sorted = _e2_on_grid(nodes.ravel(), cum_nodes.ravel(), poly).reshape(nodes.shape)
        e2sq = e2_sorted**2
        e2sq_unsorted = e2sq[:, inv_order]
        i8 = half * np.sum(w8 * e2sq_unsorted[:, : len(x8)], axis=1)
        i16 = half * np.sum(w16 * e2sq_unsorted[:, len(x8) :], axis=1)
        quad_err = np.abs(i16 - i8)
        # Pointwise: d(E2^2) = 2|E2| * err(E2); err(E2) bounded by the
        # cumulative quadrature bound at T.
        pt_err = 2.0 * half * np.sum(w16 * np.abs(e2_sorted[:, inv_order][:, len(x8) :]), axis=1) * cum_err_at_T

        panel_vals = i16
        for pi in range(j - i):
            while snap_idx < len(snaps) and snaps[snap_idx] <= b[pi]:
                st = snaps[snap_idx]
                part = (
                    _partial_meansq(a[pi], st, base[pi], poly, cfg)
                    if st < b[pi]
                    else panel_vals[pi]
                )
                snap_vals[st] = total + part
                snap_idx += 1
            total += panel_vals[pi]
            total_err += quad_err[pi] + pt_err[pi]
        i = j

    # Snapshots inside the trailing partial panel.
    while snap_idx < len(snaps):
        st = snaps[snap_idx]
        left = bounds[n_panels]
        part = _partial_meansq(left, st, float(pv[n_panels]), poly, cfg) if st > left else 0.0
        snap_vals[st] = total + part
        snap_idx += 1

    result = IntegralResult(snap_vals[t_upper], total_err, n_panels, (0.0, t_upper))
    table = [(s, snap_vals[s], snap_vals[s] / (s * s)) for s in snaps]
    return result, table


def _partial_meansq(a, t, base, poly, cfg):
    """GL16 of E2^2 over [a, t], cumulative base value given at a."""
    from .quadrature import gl_nodes

    x16, w16 = gl_nodes(16)
    half = 0.5 * (t - a)
    nodes = a + half * (np.sort(x16) + 1.0)
    seg_l = np.concatenate([[a], nodes[:-1]])
    sh = 0.5 * (nodes - seg_l)
    sm = 0.5 * (nodes + seg_l)
    x8, w8 = gl_nodes(8)
    pts = sm[:, None] + sh[:, None] * x8[None, :]
    f, _ = moment_integrand(pts.ravel(), 2, cfg.t_switch, cfg.rs_terms)
    inc = sh * np.sum(w8 * f.reshape(pts.shape), axis=1)
    cum = base + np.cumsum(inc)
    e2 = _e2_on_grid(nodes, cum, poly)
    # weights follow the sorted node order
    ws = w16[np.argsort(x16, kind="stable")]
    return half * float(np.sum(ws * e2**2))


def calibrate_p4(
    grid,
    ctx: PrecisionContext = DEFAULT_CTX,
    cfg: QuadConfig = QuadConfig(),
    integral_values=None,
) -> MomentPolynomial:
    """Least-squares fit of the three lower P4 coefficients.

    Fits int_0^T |Z|^4 - T(a4 log^4 T + a3 log^3 T) against
    T(c2 log^2 T + c1 log T + c0) with a4, a3 held at their exact values.
    integral_values bypasses the quadrature (synthetic-data hook).
    """
    grid = np.asarray(sorted(float(t) for t in grid))
    if len(grid) < 20:
        raise IllConditionedFit("need at least 20 grid points, got %d" % len(grid))
    if grid[0] <= 0 or grid[-1] / grid[0] < 10.0:
        raise IllConditionedFit("grid must span at least one decade")
    if integral_values is None:
        acc = get_accumulator(2, cfg)
        integral_values = np.array([acc.cumulative_to(t)[0] for t in grid])
    else:
        integral_values = np.asarray(integral_values, dtype=float)
        if len(integral_values) != len(grid):
            raise IllConditionedFit("integral_values length mismatch")

    a4 = float(fourth_moment_a4(ctx))
    a3 = float(fourth_moment_a3(ctx))
    logs = np.log(grid)
    target = integral_values - grid * (a4 * logs**4 + a3 * logs**3)

    def fit(ts, logs_, y):
        cols = np.stack([ts * logs_**2, ts * logs_, ts], axis=1)
        scale = np.linalg.norm(cols, axis=0)
        sol, _, rank, _ = np.linalg.lstsq(cols / scale, y, rcond=None)
        if rank < 3:
            raise IllConditionedFit("rank-deficient design matrix")
        coeffs = sol / scale
        resid = y - cols @ coeffs
        return coeffs, math.sqrt(float(np.mean(resid**2)))

    coeffs, rms = fit(grid, logs, target)
    half = len(grid) // 2
    c_lo, _ = fit(grid[:half], logs[:half], target[:half])
    c_hi, _ = fit(grid[half:], logs[half:], target[half:])
    drift = tuple(
        float(abs(lo - hi) / max(abs(full), 1e-300))
        for lo, hi, full in zip(c_lo, c_hi, coeffs)
    )
    diag = FitDiagnostics(
        residual_norm=rms,
        split_drift=drift,
        grid_size=len(grid),
        grid_span=float(grid[-1] / grid[0]),
    )
    return p4_polynomial(tuple(coeffs), CALIBRATED, ctx, fit=diag)


def twelfth_moment_table(t_list, ctx: PrecisionContext = DEFAULT_CTX, cfg: QuadConfig = QuadConfig()):
    """Exploratory rows (T, int_0^T |Z|^12, ratio to T^2 log^17 T)."""
    acc = get_accumulator(6, cfg)
    rows = []
    for t in sorted(t_list):
        v, _, e, _ = acc.cumulative_to(float(t))
        ratio = v / (t * t * math.log(t) ** 17)
        rows.append((float(t), v, ratio, e))
    return rows
