"""Weyl sums against their bound shape, rescaled rational approximation, and
the shear system that isolates one coefficient of a homogeneous form.

Run:  python demos/04_weyl_sums.py
"""

import math
import random
from fractions import Fraction

from radonlab import (IntegerPolynomial, compose_coefficient, dirichlet_approx,
                      dirichlet_rescale, euclidean_ball,
                      vandermonde_automorphisms, weyl_bound_report, weyl_sum)

body = euclidean_ball(1)

# A quadratic phase with a mid-size denominator: the sum is much smaller than
# the point count, and the ratio against N kappa^(-eps) log(N+1) stays tame.
rng = random.Random(4)
print("quadratic Weyl sums, ratio against the bound shape:")
for N in (64, 256, 1024):
    q = int(N ** 0.5) * 2 + 1
    poly = IntegerPolynomial.make(1, {(2,): Fraction(1, q),
                                      (1,): Fraction(rng.randrange(64), 64)})
    rep = weyl_bound_report(poly, body, float(N), (2,), 1, q, 1.0 / 5)
    print(f"  N = {N:5d}, q = {q:4d}: |S| = {rep.sum_modulus:8.2f}, "
          f"kappa = {rep.kappa:6.1f}, ratio = {rep.ratio:.4f}")
print()

# Dirichlet approximation and its rescaling: from theta ~ a/q to Q*theta.
theta = Fraction(math.pi - 3)
fr = dirichlet_approx(theta, 100)
print(f"pi - 3 ~ {fr.a}/{fr.q} with error {float(abs(theta - fr.value)):.2e}")
out = dirichlet_rescale(theta, fr.a, fr.q, 5, 50)
print(f"5(pi - 3) ~ {out.a}/{out.q}, denominator lands in "
      f"[{fr.q}/(2*5), 2*50] = [{fr.q / 10:.1f}, 100]")
print()

# The shear system: integer identities c0 theta = sum c_j sigma_j recover any
# coefficient of a homogeneous form from leading coefficients of its shears.
vs = vandermonde_automorphisms(2, 2)
print(f"k = 2, degree 2: {vs.nu} shears, exponent weights mu = {vs.mu}")
P = IntegerPolynomial.make(2, {(2, 0): 3, (1, 1): -7, (0, 2): 2})
sigmas = [compose_coefficient(P, L, (2, 0)) for L in vs.matrices]
for g0 in [(2, 0), (1, 1), (0, 2)]:
    c0, cj = vs.coefficients_for(g0)
    rhs = sum(c * s for c, s in zip(cj, sigmas))
    print(f"  target {g0}: c0 = {c0}, c = {cj}; "
          f"c0*theta = {c0 * P.coeff(g0)} = {rhs}")
