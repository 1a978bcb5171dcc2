"""zetalab: numerical laboratory for critical-line moments of the zeta-function.

Layers:
  precision / gammafn / constants  -- precision-contexted arithmetic core
  zeta                             -- zeta(s), chi(s), theta(t), Hardy Z(t)
  zkernel                          -- fast vectorized float64 Z evaluator
  quadrature / moments             -- error-controlled moment integrals,
                                      E1/E2, Laplace transforms, scans
  checkpoint                       -- resumable running-integral store
  spectral                         -- Maass-form data and explicit-formula sums
  arith                            -- divisor sieves and Kloosterman sums
  cli                              -- command-line front end
"""

__version__ = "0.1.0"

from .precision import DEFAULT_CTX, PrecisionContext, ValueWithError

__all__ = ["DEFAULT_CTX", "PrecisionContext", "ValueWithError", "__version__"]
