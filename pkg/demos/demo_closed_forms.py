#!/usr/bin/env python3
"""Walk through the closed-form results for real eigenvalues of 2x2 products.

The probability that a single 2x2 standard-normal matrix has real eigenvalues
is 1/sqrt(2).  For a product of two such matrices it rises to pi/4, which this
script evaluates three independent ways: the endpoint-substituted integral,
the fixed-angle probability averaged over the induced Schmidt-angle density,
and the hypergeometric identity chain.
"""

import math

from ginprod import analytic

SQRT2 = math.sqrt(2.0)

print("Single 2x2 matrix: P(both eigenvalues real)")
print(f"  exact 1/sqrt(2)            = {1 / SQRT2:.12f}")
print(f"  quadrature at theta=pi/4   = {analytic.p_theta_quadrature(math.pi / 4):.12f}")
series = analytic.p_theta_series(math.pi / 4)
print(f"  series at theta=pi/4       = {series.value:.12f}   "
      f"({series.terms_used} terms, est err {series.err_est:.1e})")

print()
print("Fixed-angle probability p_theta decreases from 1 to 1/sqrt(2):")
for frac, label in ((1 / 24, "pi/24"), (1 / 12, "pi/12"), (1 / 6, "pi/6"), (1 / 4, "pi/4")):
    theta = math.pi * frac
    print(f"  theta = {label:>5}: p = {analytic.p_theta_quadrature(theta):.8f}")

print()
print("Product of two 2x2 matrices: P(both eigenvalues real)")
print(f"  exact pi/4                 = {math.pi / 4:.12f}")
print(f"  endpoint-aware quadrature  = {analytic.p2_22_integral():.12f}")
print(f"  averaged p_theta           = {analytic.mean_p_theta():.12f}")

print()
print("The same number via the hypergeometric identity chain:")
f1 = analytic.hypergeom_pFq([0.25, 0.25, 0.25], [0.5, 1.25], 1.0, tol=1e-10)
f2 = analytic.hypergeom_pFq([0.75, 0.75, 0.75], [1.5, 1.75], 1.0, tol=1e-10)
combo = (math.gamma(0.25) ** 2 * f1.value / math.sqrt(2 * math.pi)
         - math.gamma(-0.25) ** 2 * f2.value / (24 * math.sqrt(2 * math.pi)))
g1 = analytic.hypergeom_pFq([0.25, 0.25], [1.25], 1.0, tol=1e-10)
print(f"  3F2 two-term combination   = {combo:.12f}   (pi^2/2 = {math.pi**2 / 2:.12f})")
print(f"  sqrt(2) pi 2F1(...)        = {SQRT2 * math.pi * g1.value:.12f}")
print(f"  => probability             = {combo / (2 * math.pi):.12f}")

print()
print("Companion evaluation used along the way:")
print(f"  integral sqrt((1+sin x)/sin x) over (0, pi) = {analytic.sqrt_sine_ratio_integral():.12f}"
      f"   (2 pi = {2 * math.pi:.12f})")
