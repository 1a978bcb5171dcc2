"""Frozen fixtures; generated by tools/make_fixtures.py.

Each value records the oracle that produced or verified it.  The
moment fixtures are tied to the default QuadConfig digest below.
"""

QUAD_DIGEST = '143beb303a658c73'

# oracle: mpmath tanh-sinh quadrature of siegelz^2 (30 dps), piecewise
MOMENT1_0_100 = 295.63509905471943
MOMENT1_0_100_ORACLE = 295.63509905471915

# oracle: mpmath tanh-sinh quadrature of siegelz^4 (26 dps), piecewise
MOMENT2_0_500 = 42393.15299125832
MOMENT2_0_500_ORACLE = 42393.1529936112

# oracle: cumulative grid of the k=1 accumulator (window-validated
# against mpmath); ratio over the boundary grid on [10, 5000]
E1_AT_1000 = -11.801779108724077
E1_RATIO_MAX_10_5000 = 7.586553654812343

# E2 uses the packaged calibrated P4 (data/p4_default.txt)
E2_AT_2000 = -2359.285628385085
E2_RATIO_MAX_500_5000 = 69.29533246218905

# oracle: trapezoid on a 0.002-step grid over |t| <= 8 delta
SMOOTHED_200_20 = 78.99697923833794
SMOOTHED_200_20_ORACLE = 78.99697923833715

# oracle: doubled nodes and tightened tail tolerance
LAPLACE2_01 = 40.87589024439612
LAPLACE2_01_ORACLE = 40.87589024440928

# g(sigma) = L1(2 sigma) - kober_main(sigma) on sigma = 0.2/0.1/0.05/0.02
KOBER_DIFFS = (2.827549452009365, 2.9945980529610416, 3.071324739303998, 3.1143503174753704)
KOBER_C0 = 3.1143503174753704

# oracle: bisection on the direct Im log-gamma evaluation of theta
THETA_POSITIVE_ZERO = 17.84559954041086

# oracle: recomputation at 256 bits
R_AT_9_5337 = (-0.33973396786380106-0.11825820314751734j)
FE_FACTOR_S2_K9_5337 = (0.2831412118104746+0j)

# oracle: composite 16-node Gauss-Legendre on unit windows of pointwise E2
INT_E2_1000 = 564001.1729157493
INT_E2_1000_ORACLE = 564001.1730074123

# oracle: trapezoid of E2^2 over the panel-boundary grid
MEANSQ_E2_1000 = 1240523728.3748055
MEANSQ_E2_1000_ORACLE = 1240279423.1858034
