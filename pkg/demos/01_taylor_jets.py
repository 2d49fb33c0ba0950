"""Truncated Taylor jets: exact derivatives without finite differences.

A jet carries the value of a quantity together with all of its partial
derivatives up to order 4, and arithmetic on jets propagates the whole
derivative tower exactly. This is the substrate every geometric quantity in
the package is built on.
"""

import math

from bieigen import jets

# the coordinate function t at the point t = 3, carried to second order
t = jets.variable(0, 3.0, order=2, nvars=1)
print("jet of t at 3:        ", t.coeffs)

# squaring propagates the derivatives of t^2: value 9, slope 6, curvature 2
sq = t * t
print("jet of t^2 at 3:      ", sq.coeffs, " (Taylor-normalized)")
print("d/dt t^2      =", sq.derivative((1,)))
print("d2/dt2 t^2    =", sq.derivative((2,)))

# elementary functions compose through their derivative towers
t4 = jets.variable(0, 0.85, order=4, nvars=1)
f = jets.sin(jets.exp(0.4 * t4) + t4 * t4)
print("\nderivative tower of sin(exp(0.4 t) + t^2) at t = 0.85:")
for k in range(5):
    print(f"  order {k}: {f.derivative((k,)): .12f}")

# identities hold to rounding because the arithmetic is exact
one = jets.sin(t4) * jets.sin(t4) + jets.cos(t4) * jets.cos(t4)
print("\nsin^2 + cos^2 coefficients:", one.coeffs)

# multivariate jets carry mixed partials; extracting a derivative lowers the
# order by one and de-normalizes the coefficients
u = jets.variable(0, 0.3, order=3, nvars=2)
v = jets.variable(1, 0.7, order=3, nvars=2)
g = jets.exp(u * v)
gu = g.extract_derivative(0)
print("\nexp(uv) at (0.3, 0.7):")
print("  d/du as a jet of one lower order:", gu.coeffs)
print("  mixed partial d2/dudv:", g.derivative((1, 1)),
      " analytic:", math.exp(0.21) * (1 + 0.21))

# the engine refuses mixed shapes rather than silently coercing
try:
    t + u
except ValueError as err:
    print("\nshape mismatch is a contract failure:", err)
