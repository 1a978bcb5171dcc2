#!/usr/bin/env python3
"""Generate Chebyshev tables for the Riemann-Siegel correction terms C0..C4.

C_k(p) are combinations of derivatives of
    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
on p in [0, 1].  Derivatives are taken symbolically with sympy and evaluated
with mpmath at 60 digits on a Chebyshev grid; the resulting coefficients are
written to src/zetalab/_rs_cheb.py.  Run from the repository root:

    python3 tools/gen_rs_cheb.py
"""

import pathlib

import mpmath
import sympy as sp
from mpmath import mp

P = sp.symbols("p")
PSI = sp.cos(2 * sp.pi * (P**2 - P - sp.Rational(1, 16))) / sp.cos(2 * sp.pi * P)

# C_k in terms of Psi derivatives (Haselgrove normalization, powers of
# (t/2pi)^(-1/2) relative to the leading correction).
PI = sp.pi
C_EXPRS = [
    PSI,
    -sp.diff(PSI, P, 3) / (96 * PI**2),
    sp.diff(PSI, P, 2) / (64 * PI**2) + sp.diff(PSI, P, 6) / (18432 * PI**4),
    -sp.diff(PSI, P, 1) / (64 * PI**2)
    - sp.diff(PSI, P, 5) / (3840 * PI**4)
    - sp.diff(PSI, P, 9) / (5308416 * PI**6),
    sp.diff(PSI, P, 0) / (128 * PI**2)
    + 19 * sp.diff(PSI, P, 4) / (24576 * PI**4)
    + 11 * sp.diff(PSI, P, 8) / (5898240 * PI**6)
    + sp.diff(PSI, P, 12) / (2038431744 * PI**8),
]

M_NODES = 192
DEGREE = 88


def cheb_coeffs(fn, m, degree):
    # Chebyshev nodes on [0,1]; discrete cosine projection.
    us = [mp.cos(mp.pi * (i + mp.mpf(1) / 2) / m) for i in range(m)]
    xs = [(u + 1) / 2 for u in us]
    vals = [fn(x) for x in xs]
    coeffs = []
    for j in range(degree + 1):
        s = mp.mpf(0)
        for i in range(m):
            s += vals[i] * mp.cos(j * mp.pi * (i + mp.mpf(1) / 2) / m)
        c = 2 * s / m
        coeffs.append(c / 2 if j == 0 else c)
    return coeffs


def main():
    mp.dps = 60
    tables = []
    for k, expr in enumerate(C_EXPRS):
        fn = sp.lambdify(P, expr, modules="mpmath")
        coeffs = cheb_coeffs(fn, M_NODES, DEGREE)
        # Trim trailing coefficients below float64 noise.
        cut = len(coeffs)
        while cut > 8 and abs(coeffs[cut - 1]) < mpmath.mpf("1e-19"):
            cut -= 1
        tables.append([float(c) for c in coeffs[:cut]])
        print("C%d: %d coefficients, tail %.2e" % (k, cut, abs(coeffs[cut - 1])))

    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "zetalab" / "_rs_cheb.py"
    with open(out, "w") as f:
        f.write('"""Chebyshev coefficients (on p in [0,1]) for the Riemann-Siegel\n')
        f.write("correction terms C0..C4.  Generated by tools/gen_rs_cheb.py; do not\n")
        f.write('edit by hand."""\n\n')
        f.write("import numpy as np\n")
        f.write("from numpy.polynomial import chebyshev as _cheb\n\n")
        f.write("N_CORRECTIONS = %d\n\n" % len(tables))
        f.write("COEFFS = (\n")
        for tab in tables:
            f.write("    np.array([\n")
            for c in tab:
                f.write("        %r,\n" % c)
            f.write("    ]),\n")
        f.write(")\n\n\n")
        f.write("def eval_correction(k, p):\n")
        f.write('    """C_k at p (scalar or ndarray), p in [0, 1]."""\n')
        f.write("    u = 2.0 * np.asarray(p, dtype=float) - 1.0\n")
        f.write("    out = _cheb.chebval(u, COEFFS[k])\n")
        f.write("    return out if out.ndim else float(out)\n")
    print("wrote", out)


if __name__ == "__main__":
    main()
