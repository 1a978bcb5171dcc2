"""Panel Gauss-Legendre quadrature tuned to the zero-gap scale of Z(t).

The panel mesh is generated deterministically from t=0 with width equal to a
configured fraction of the local mean zero gap 2 pi / log(t/2pi).  Each panel
is integrated with n and 2n Gauss-Legendre nodes; disagreement triggers
bisection up to a depth cap, and the final disagreement plus the integrated
pointwise kernel error model enters the reported error bound.  All reductions
run in a fixed order so reruns and checkpoint resumes are bit-identical.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .config import QuadConfig
from .errors import DomainError
from .zkernel import moment_integrand

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IntegralResult:
    """Value of a quadrature with error bound, panel count and range."""

    value: float
    err_bound: float
    panels: int
    t_range: tuple


_GL_CACHE: dict = {}


def gl_nodes(n: int):
    got = _GL_CACHE.get(n)
    if got is None:
        x, w = np.polynomial.legendre.leggauss(n)
        got = (x, w)
        _GL_CACHE[n] = got
    return got


def panel_width(t: float, cfg: QuadConfig) -> float:
    gap = _TWO_PI / max(math.log(t / _TWO_PI) if t > 0 else 0.0, 1.0)
    return min(max(cfg.gap_fraction * gap, cfg.w_min), cfg.w_max)


class PanelBatch:
    """Adaptive integration of a list of panels against one integrand.

    integrand(t_array) -> (f, df) with df the pointwise error model.  Per
    original panel the accepted sub-panels accumulate in left-to-right order,
    independently of batching, so results are reproducible bit-for-bit.
    """

    def __init__(self, integrand, cfg: QuadConfig):
        self.integrand = integrand
        self.cfg = cfg

    def run(self, lefts, rights):
        cfg = self.cfg
        m = len(lefts)
        val = np.zeros(m)
        val_u = np.zeros(m)
        err = np.zeros(m)
        err_u = np.zeros(m)
        work = [(i, lefts[i], rights[i], 0) for i in range(m)]
        while work:
            idx = np.array([w[0] for w in work])
            a = np.array([w[1] for w in work])
            b = np.array([w[2] for w in work])
            depth = np.array([w[3] for w in work])
            i1, i1u, i2, i2u, pt, ptu = self._panel_pair(a, b)
            diff = np.abs(i1 - i2)
            diff_u = np.abs(i1u - i2u)
            tol = np.maximum(cfg.panel_abs, cfg.panel_rel * np.abs(i2))
            accept = (diff <= tol) | (depth >= cfg.max_depth)
            for j in np.nonzero(accept)[0]:
                i = idx[j]
                val[i] += i2[j]
                val_u[i] += i2u[j]
                err[i] += diff[j] + pt[j]
                err_u[i] += diff_u[j] + ptu[j]
            nxt = []
            for j in np.nonzero(~accept)[0]:
                mid = 0.5 * (a[j] + b[j])
                nxt.append((idx[j], a[j], mid, depth[j] + 1))
                nxt.append((idx[j], mid, b[j], depth[j] + 1))
            work = nxt
        return val, val_u, err, err_u

    def _panel_pair(self, a, b):
        """Coarse/fine GL values of f and u*f plus pointwise error integrals."""
        cfg = self.cfg
        n = cfg.nodes
        x1, w1 = gl_nodes(n)
        x2, w2 = gl_nodes(2 * n)
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        t1 = mid[:, None] + half[:, None] * x1[None, :]
        t2 = mid[:, None] + half[:, None] * x2[None, :]
        ts = np.concatenate([t1.ravel(), t2.ravel()])
        f, df = self.integrand(ts)
        n1 = t1.size
        f1 = f[:n1].reshape(t1.shape)
        f2 = f[n1:].reshape(t2.shape)
        df2 = df[n1:].reshape(t2.shape)
        i1 = half * np.sum(w1 * f1, axis=1)
        i2 = half * np.sum(w2 * f2, axis=1)
        i1u = half * np.sum(w1 * f1 * t1, axis=1)
        i2u = half * np.sum(w2 * f2 * t2, axis=1)
        pt = half * np.sum(w2 * df2, axis=1)
        ptu = half * np.sum(w2 * df2 * t2, axis=1)
        return i1, i1u, i2, i2u, pt, ptu


class MomentAccumulator:
    """Cumulative integrals of |Z(t)|^{2k} (and t |Z|^{2k}) over a shared mesh.

    Per-panel values are stored once and prefix sums are a plain left fold, so
    cumulative values at mesh boundaries are independent of how far previous
    runs integrated -- the property checkpoint resume relies on.
    """

    CHUNK = 512

    def __init__(self, k: int, cfg: QuadConfig):
        self.k = k
        self.cfg = cfg
        self.bounds = [0.0]
        self._val = []
        self._val_u = []
        self._err = []
        self._err_u = []
        self._prefix = None
        self._batch = PanelBatch(self._integrand, cfg)

    def _integrand(self, ts):
        return moment_integrand(ts, self.k, self.cfg.t_switch, self.cfg.rs_terms)

    def ensure(self, t_target: float):
        if t_target <= self.bounds[-1]:
            return
        new_lefts, new_rights = [], []
        t = self.bounds[-1]
        while t < t_target:
            w = panel_width(t, self.cfg)
            new_lefts.append(t)
            t += w
            new_rights.append(t)
            self.bounds.append(t)
        for i in range(0, len(new_lefts), self.CHUNK):
            v, vu, e, eu = self._batch.run(
                new_lefts[i : i + self.CHUNK], new_rights[i : i + self.CHUNK]
            )
            self._val.extend(v.tolist())
            self._val_u.extend(vu.tolist())
            self._err.extend(e.tolist())
            self._err_u.extend(eu.tolist())
        self._prefix = None

    def prefix(self):
        if self._prefix is None:
            self._prefix = (
                np.concatenate([[0.0], np.cumsum(self._val)]),
                np.concatenate([[0.0], np.cumsum(self._val_u)]),
                np.concatenate([[0.0], np.cumsum(self._err)]),
                np.concatenate([[0.0], np.cumsum(self._err_u)]),
            )
        return self._prefix

    def n_panels_to(self, t: float) -> int:
        return bisect_right(self.bounds, t) - 1

    def cumulative_to(self, t: float):
        """(int_0^t f, int_0^t u f, err, err_u); t may fall inside a panel."""
        if t < 0:
            raise DomainError("integration limit must be >= 0")
        if t == 0:
            return 0.0, 0.0, 0.0, 0.0
        self.ensure(t)
        i = self.n_panels_to(t)
        pv, pu, pe, peu = self.prefix()
        v, vu, e, eu = pv[i], pu[i], pe[i], peu[i]
        left = self.bounds[i]
        if t > left:
            dv, dvu, de, deu = self._batch.run([left], [t])
            v, vu = v + dv[0], vu + dvu[0]
            e, eu = e + de[0], eu + deu[0]
        return float(v), float(vu), float(e), float(eu)

    def boundary_grid(self, t0: float, t1: float):
        """Mesh boundaries in [t0, t1] with cumulative values and error bounds."""
        self.ensure(t1)
        lo = bisect_right(self.bounds, t0) - 1
        if self.bounds[lo] < t0:
            lo += 1
        hi = bisect_right(self.bounds, t1) - 1
        bs = np.array(self.bounds[lo : hi + 1])
        pv, pu, pe, _ = self.prefix()
        return bs, pv[lo : hi + 1], pu[lo : hi + 1], pe[lo : hi + 1]


_ACCUMULATORS: dict = {}


def get_accumulator(k: int, cfg: QuadConfig) -> MomentAccumulator:
    key = (k, cfg.digest())
    acc = _ACCUMULATORS.get(key)
    if acc is None:
        acc = MomentAccumulator(k, cfg)
        _ACCUMULATORS[key] = acc
    return acc


def clear_accumulators():
    _ACCUMULATORS.clear()
