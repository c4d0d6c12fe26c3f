"""Power-law decay of complete exponential sums over residues.

Run:  python demos/03_gauss_decay.py
"""

from radonlab import (MultiIndexSet, RationalPoint, full_degree_set,
                      gauss_decay_scan, gauss_sum)

# Pure quadratic sums: the classical magnitude q^(-1/2) at odd q.
g2 = MultiIndexSet.from_indices(1, [(2,)])
print("pure quadratic, |G(1/q)| vs q^(-1/2):")
for q in (5, 25, 121, 199):
    v = abs(gauss_sum(RationalPoint.make([1], q), g2, 1))
    print(f"  q = {q:4d}: {v:.6f}  vs  {q ** -0.5:.6f}")
print()

# Linear-plus-quadratic sums: exhaustive maxima over admissible numerators
# and a fitted decay exponent over the top of the range.
g12 = full_degree_set(1, 2)
res = gauss_decay_scan(g12, 1, 256)
print("degree <= 2 family, selected rows (q, max |G|, argmax):")
for row in res.rows:
    if row.q in (2, 4, 16, 64, 128, 256):
        print(f"  q = {row.q:4d}: {row.max_abs:.6f}  at a = {row.argmax}")
print(f"fitted decay exponent on q in [{res.fit_window[0]}, {res.fit_window[1]}]: "
      f"{res.fitted_exponent:.3f}")
print()
print("note the q = 2 outlier: the numerators (1, 1) make the phase")
print("(r + r^2)/2 an integer for every r, so the normalized sum is exactly 1;")
print("the power-law decay is a statement with a constant, visible from q = 3 on.")
