"""Convex bodies, dilated lattice sets, and the convolution kernels built on them.

Run:  python demos/01_lattice_and_kernels.py
"""

from radonlab import (annulus_points, averaging_kernel, cz_inverse,
                      euclidean_ball, cube, full_degree_set, lattice_points,
                      near_boundary_count, singular_kernel)

# A dilate of the open unit ball meets the integer lattice in finitely many
# points, and the set changes only at countably many scales.
ball2 = euclidean_ball(2)
for t in (0.5, 1.0, 1.5, 2.5, 5.0):
    pts = lattice_points(ball2, t)
    print(f"|B(0,{t}) ∩ Z^2| = {len(pts)}")
print()

# Annuli split exactly: the points between two scales are the set difference.
inner, outer = 1.5, 2.5
ann = annulus_points(ball2, inner, outer)
print(f"annulus {inner} -> {outer}: {len(ann)} points:")
print(" ", sorted(ann.points))
print()

# Near-boundary counts grow linearly in the shell width and in the diameter.
for R in (10.0, 20.0, 40.0):
    c = near_boundary_count(ball2, R, 1.0)
    print(f"R = {R:5.1f}: #{{dist(x, boundary) < 1}} = {c:5d}  "
          f"(per unit diameter: {c / (2 * R):.2f})")
print()

# The averaging kernel at scale 2^t pushes the uniform measure on the dilate
# through the monomial map y -> (y, y^2); collisions accumulate mass and the
# total mass is exactly one.
interval = euclidean_ball(1)
gammas = full_degree_set(1, 2)
k = averaging_kernel(interval, 2.0, gammas)
print("averaging kernel at t = 2 (radius 4):")
for x, v in k.entries:
    print(f"  site {x}: weight {v.real:.4f}")
print("total mass:", k.total_mass())
print()

# The truncated singular kernel places 1/y at (y, y^2); oddness makes the
# entries cancel pairwise in the first coordinate.
ks = singular_kernel(interval, 3.0, gammas, cz_inverse(interval))
total = sum(v for _, v in ks.entries)
print(f"singular kernel at t = 3: {len(ks)} sites, "
      f"sum = {abs(total):.2e}, l1 norm = {ks.norm_l1():.3f}")
