#!/usr/bin/env python3
"""Regenerate the packaged calibrated defaults.

Writes src/zetalab/data/p4_default.txt (lower fourth-moment polynomial
coefficients, fitted on 40 log-spaced points over [500, 5000]) and
src/zetalab/data/atkinson_default.txt (Laplace main-term C, D, E fitted on a
sigma grid with the sign-consistent B).  Both runs are deterministic given
the quadrature config defaults.

    python3 tools/calibrate_defaults.py
"""

import math
import pathlib

import numpy as np

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "zetalab" / "data"


def main():
    from zetalab.config import QuadConfig
    from zetalab.laplace import calibrate_atkinson_cde
    from zetalab.moments import calibrate_p4
    from zetalab.precision import PrecisionContext

    ctx = PrecisionContext()
    cfg = QuadConfig()

    grid = np.exp(np.linspace(math.log(500.0), math.log(5000.0), 40))
    poly = calibrate_p4(grid, ctx, cfg)
    with open(DATA / "p4_default.txt", "w") as f:
        f.write("# Calibrated lower coefficients of the fourth-moment polynomial\n")
        f.write("# P4(y) = a4 y^4 + a3 y^3 + c2 y^2 + c1 y + c0 (a4, a3 exact).\n")
        f.write("# Fit: 40 log-spaced T in [500, 5000], least squares with the\n")
        f.write("# leading two coefficients pinned; quad digest %s.\n" % cfg.digest())
        f.write("# provenance: calibrated (see tools/calibrate_defaults.py)\n")
        f.write("# residual_norm=%r split_drift=%r\n" % (poly.fit.residual_norm, poly.fit.split_drift))
        for name, c in zip(("c2", "c1", "c0"), poly.coeffs[2:]):
            f.write("%s,%r\n" % (name, c))
    print("p4_default:", poly.coeffs[2:])

    sigmas = np.exp(np.linspace(math.log(3e-4), math.log(0.01), 16))
    cal = calibrate_atkinson_cde(sigmas, ctx, cfg, b_variant="consistent")
    with open(DATA / "atkinson_default.txt", "w") as f:
        f.write("# Calibrated C, D, E of the fourth-moment Laplace main term\n")
        f.write("# (A log^4(1/s) + B log^3(1/s) + C log^2 + D log + E)/s.\n")
        f.write("# B variant: consistent (= -printed); see decisions ledger.\n")
        f.write("# Fit: 16 log-spaced sigma in [3e-4, 0.01]; quad digest %s.\n" % cfg.digest())
        f.write("# residual_norm=%r split_drift=%r\n" % (cal.residual_norm, cal.split_drift))
        for name, c in zip(("C", "D", "E"), cal.cde):
            f.write("%s,%r\n" % (name, c))
    print("atkinson_default:", cal.cde)
    print("atkinson drift:", cal.split_drift)


if __name__ == "__main__":
    main()
