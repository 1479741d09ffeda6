#!/usr/bin/env python3
"""Truncated Taylor jets in five minutes.

A jet stores value + all partial derivatives up to third order of a scalar
quantity at a base point.  Arithmetic on jets is truncated polynomial
arithmetic, so every derivative below is exact to float64 roundoff: no step
sizes, no subtractive cancellation.
"""

import math

from parageom import Jet3, analytic, extract_partial, seed_variable
from parageom.jets import cosh, sqrt


def banner(title):
    print("=" * 64)
    print(title)
    print("-" * 64)


banner("1. A coordinate jet and a polynomial")
u = seed_variable(0, 3.0, num_vars=1)  # the function u at u = 3
p = u * u * u - 2.0 * u + 1.0
print("p(u) = u^3 - 2u + 1 at u = 3")
hand = {0: 22, 1: 25, 2: 18, 3: 6}
for order in range(4):
    got = extract_partial(p, (order,))
    print(f"  d^{order} p = {got:g}   (hand value {hand[order]})")

banner("2. Composition with analytic functions")
t = seed_variable(0, 0.0, 1)
s = sqrt(1.0 + t)
print("sqrt(1 + t) at t = 0: coefficients", [f"{c:g}" for c in s.coeffs],
      " (binomial series 1, 1/2, -1/8, 1/16)")
c = cosh(t)
print("cosh(t) at t = 0:     coefficients", [f"{c_:g}" for c_ in c.coeffs],
      " (series 1, 0, 1/2, 0)")

banner("3. Several variables, mixed partials")
x = seed_variable(0, 1.5, 2)
y = seed_variable(1, -0.5, 2)
f = analytic(x * x + y * y, "exp")  # exp(x^2 + y^2)
val = math.exp(1.5**2 + 0.5**2)
print("f = exp(x^2 + y^2) at (1.5, -0.5)")
print(f"  f       = {f.value:.12g}   (closed form {val:.12g})")
print(f"  df/dx   = {extract_partial(f, (1, 0)):.12g}   (closed form {2 * 1.5 * val:.12g})")
print(f"  d2f/dxdy= {extract_partial(f, (1, 1)):.12g}   (closed form {4 * 1.5 * -0.5 * val:.12g})")

banner("4. Division is Taylor inversion")
g = Jet3.constant(1.0, 1) / (1.0 + seed_variable(0, 0.0, 1))
print("1/(1+u) at u = 0: coefficients", [f"{c_:g}" for c_ in g.coeffs],
      " (geometric series 1, -1, 1, -1)")
