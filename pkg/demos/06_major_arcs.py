"""Discrete multipliers next to their continuous symbols: approximation near
rational frequencies, oscillatory decay, and the exact block variation table.

Run:  python demos/06_major_arcs.py
"""

import math
from fractions import Fraction

from radonlab import (RationalPoint, continuous_symbol, discrete_multiplier,
                      euclidean_ball, full_degree_set,
                      kernel_block_variation_report, major_arc_error,
                      symbol_decay_scan)

interval = euclidean_ball(1)
g1 = full_degree_set(1, 1)
g12 = full_degree_set(1, 2)

# The discrete multiplier concentrates near rationals with small denominator:
# the height at a/q is the arithmetic factor G(a/q).
print("multiplier near 0 and near 1/2 (t = 8, degree <= 2 phases):")
for xi in ((Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(0)),
           (Fraction(1, 2), Fraction(1, 2))):
    m = discrete_multiplier("averaging", interval, 8.0, g12, xi)
    print(f"  xi = ({xi[0]}, {xi[1]}): |m| = {abs(m):.6f}")
print()

# Approximation near a/q: the sup over a unit block of scales of
# |m_t(a/q) - G(a/q)| shrinks like q * 2^(-N).
print("major-arc error against q 2^(-N):")
for q, a in ((2, (1, 0)), (3, (1, 1))):
    pt = RationalPoint.make(a, q)
    for N in (4, 8, 12):
        rep = major_arc_error("averaging", interval, g12, N, pt)
        print(f"  q = {q}, N = {N:2d}: sup err = {rep.sup_error:.3e}, "
              f"ratio = {rep.ratio_leading:.3f}")
print()

# The continuous symbol of the interval average is the sinc profile; the
# decay scan reports |Phi| against the dilation-invariant quasi-norm.
ev = continuous_symbol("averaging", interval, 5.0, g1, [0.01])
x = 2 * math.pi * 2.0 ** 5 * 0.01
print(f"symbol at t = 5, xi = 0.01: {ev.value.real:+.6f} "
      f"(closed form {math.sin(x) / x:+.6f}, quadrature level {ev.levels})")
scan = symbol_decay_scan("averaging", interval, g1, [3.0, 6.0, 9.0],
                         [[0.02], [0.002]])
print(f"decay scan: max |Phi| (2^t q*)^(1/d) = {scan.max_decay_ratio:.3f}, "
      f"max |Phi - 1| (2^t q*)^(-1/d) = {scan.max_smallness_ratio:.3f}")
print()

# The kernel path t -> K_{2^t} moves in l^1 only when new lattice points
# enter; over blocks [n^tau, (n+1)^tau] the exact 1-variation decays like
# n^(tau - 1).
rep = kernel_block_variation_report(interval, g1, "averaging", 0.5, 60)
rows = [r for r in rep.rows if r.n in (2, 8, 32, 60)]
for r in rows:
    print(f"  block n = {r.n:3d}: V^1 l^1 = {r.value:.4f}, "
          f"ratio to n^(tau-1) = {r.ratio:.3f}")
print(f"fitted exponent over the table: {rep.fitted_slope:.3f} "
      f"(target tau - 1 = -0.5)")
