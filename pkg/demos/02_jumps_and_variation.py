"""Jump counting, r-variation, and the jump seminorm of operator outputs.

Run:  python demos/02_jumps_and_variation.py
"""

import math
import random

from radonlab import (LatticeFunction, PathField, averaging_kernel,
                      euclidean_ball, full_degree_set, jump_count,
                      jump_profile, jump_seminorm, r_variation)

# The lambda-jump count is the longest chain of moves all at least lambda;
# the r-variation is the largest l^r mass of moves along a chain.
vals = [0, 1, 0, 1]
print("path", vals)
for lam in (0.5, 1.0, 1.5):
    print(f"  N_{lam} = {jump_count(vals, lam)}")
for r in (1.0, 2.0, math.inf):
    print(f"  V^{r} = {r_variation(vals, r):.4f}")
print()

# The jump seminorm maximizes lambda * ||N_lambda^(1/2)||_p over thresholds;
# only finitely many thresholds matter on finite data.
rng = random.Random(1)
sites = tuple((i,) for i in range(5))
times = tuple(float(t) for t in range(8))
values = tuple(tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in times)
               for _ in sites)
field = PathField(sites, times, values)
for p in (1.5, 2.0, 4.0):
    print(f"jump seminorm at p = {p}: {jump_seminorm(field, p):.4f}")
print()

# Feeding a delta through the averaging family gives per-site sample paths
# of the operator; the profile summarizes their variation and jump norms.
interval = euclidean_ball(1)
gammas = full_degree_set(1, 2)
family = [(float(t), averaging_kernel(interval, float(t), gammas))
          for t in range(1, 7)]
prof = jump_profile(family, LatticeFunction.delta(2), 2.0, r_values=(2.0, 3.0))
print(f"delta through 6 scales: {prof.field.n_sites} sites touched")
print(f"  J_2^2 = {prof.jump_norm:.4f}")
print(f"  max V^2 per site = {max(prof.variation(2.0)):.4f}")
print(f"  max V^3 per site = {max(prof.variation(3.0)):.4f}")
