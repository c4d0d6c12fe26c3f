"""Structured denominator sets, their fraction families, the coprime-product
partition, and the balanced pair coloring.

Run:  python demos/05_denominator_sets.py
"""

import math

from radonlab import (build_denominator_set, fraction_family,
                      fraction_family_count, kappa_coloring, lcm_first_n,
                      partition_coprime_products)

# Below an exactly computed cutoff the set is just {1..N}; above it, members
# factor as a divisor of the window-free lcm times a window-smooth number.
for N in (10, 26, 64, 128):
    ds = build_denominator_set(N, 1.0)
    print(f"N = {N:4d}: branch = {ds.branch:7s}, |P_N| = {len(ds):6d}, "
          f"window primes = {len(ds.window):3d}, lcm == lcm(1..N): "
          f"{ds.lcm() == lcm_first_n(N)}")
print()

# The reduced-fraction family over the set: counts via the Jordan totient.
ds = build_denominator_set(40, 1.0)
for d in (1, 2):
    cnt = fraction_family_count(ds.members, d)
    print(f"d = {d}: {cnt} reduced fractions over P_40 "
          f"(log bound (d+1) N^rho = {(d + 1) * 40})")
small = fraction_family([1, 2, 3, 4], 1)
print("family over {1,2,3,4}, d = 1:",
      sorted(str(p.components()[0]) for p in small))
print()

# The partition after which every class sits inside a product of pairwise
# coprime prime-power sets; class count grows like log N.
for N in (64, 256, 1024):
    res = partition_coprime_products(N, 1.0)
    print(f"N = {N:5d}: {res.part_count:3d} classes over {res.universe_size:6d} "
          f"products (ratio to log N: {res.part_count / math.log(N):.2f})")
part = partition_coprime_products(64, 1.0).parts[3]
print(f"sample class: k = {part.k}, factor sets "
      f"{[sorted(S)[:4] for S in part.factors]}, {len(part.members)} members")
print()

# Pair sequences without a unique value split evenly: both chosen and
# rejected sides cover the full value set.
pairs = [(2, 3), (3, 5), (5, 2), (7, 7)]
kap = kappa_coloring(pairs)
chosen = {p[k] for p, k in zip(pairs, kap)}
other = {p[1 - k] for p, k in zip(pairs, kap)}
print(f"pairs {pairs}: kappa = {kap}")
print(f"  chosen side covers {sorted(chosen)}, rejected side covers {sorted(other)}")
