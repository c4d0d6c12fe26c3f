"""Convex bodies, dilated lattice-point enumeration, and near-boundary counts.

Three analytic families are shipped: open Euclidean balls, open cubes
(sup-norm balls) and open diagonal ellipsoids, each normalized to sit inside
the closed unit ball and contain a small ball around the origin.  Membership
of a lattice point in the dilate ``t * body`` is decided exactly: each body
exposes the square of its gauge (Minkowski functional) at integer points as a
``Fraction``, and the open-set convention is a strict comparison against
``t**2``.  Points lying exactly on the boundary of a dilate are excluded.

Enumeration scans an integer bounding box in lexicographic order, so outputs
are deterministic.  A configurable cap guards against runaway scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetError, PreconditionError

DEFAULT_POINT_CAP = 10 ** 8


def _strict_int_below(bound: Fraction) -> int:
    """Largest integer strictly below ``bound``."""
    return (bound.numerator - 1) // bound.denominator


class ConvexBody:
    """Base class for the shipped bodies.  Instances are immutable."""

    kind: str
    k: int
    inner_radius: float   # radius of a ball around 0 contained in the body
    outer_radius: float   # the body is contained in the closed ball of this radius (<= 1)

    # -- exact membership -------------------------------------------------

    def gauge_square(self, y: Sequence[int]) -> Fraction:
        raise NotImplementedError

    def contains_lattice(self, y: Sequence[int], t: float) -> bool:
        """Is the integer point ``y`` in the open dilate by ``t``?  Exact."""
        if t <= 0:
            return False
        return self.gauge_square(y) < Fraction(t) * Fraction(t)

    # -- float geometry ----------------------------------------------------

    def float_gauge(self, x: Sequence[float]) -> float:
        raise NotImplementedError

    def boundary_distance(self, x: Sequence[float], t: float) -> float:
        """Euclidean distance from ``x`` to the boundary of the dilate by ``t``."""
        raise NotImplementedError

    def diameter(self, t: float = 1.0) -> float:
        return 2.0 * t * self.outer_radius

    # -- enumeration --------------------------------------------------------

    def _box_bound(self, t: float) -> int:
        """Per-coordinate integer bound: all points of the dilate satisfy |y_i| <= bound."""
        return max(0, _strict_int_below(Fraction(t) * Fraction(self.outer_radius)) + 1)

    def _scan(self, t: float, cap: int) -> list[tuple[int, ...]]:
        b = self._box_bound(t)
        if (2 * b + 1) ** self.k > cap:
            raise BudgetError("lattice point cap", (2 * b + 1) ** self.k, cap)
        t2 = Fraction(t) * Fraction(t)
        pts = []
        for y in _box_iter(b, self.k):
            if self.gauge_square(y) < t2:
                pts.append(y)
        return pts


def _box_iter(b: int, k: int):
    if k == 1:
        for y in range(-b, b + 1):
            yield (y,)
    else:
        for y0 in range(-b, b + 1):
            for rest in _box_iter(b, k - 1):
                yield (y0,) + rest


@dataclass(frozen=True)
class EuclideanBall(ConvexBody):
    radius: float = 1.0

    kind = "euclidean-ball"

    def __post_init__(self) -> None:
        if not 0 < self.radius <= 1:
            raise ValueError("ball radius must lie in (0, 1]")
        object.__setattr__(self, "k", self._k)
        object.__setattr__(self, "inner_radius", min(self.radius, 1 - 2.0 ** -20))
        object.__setattr__(self, "outer_radius", self.radius)

    # dimension is provided via constructor helper below
    _k: int = 1

    def gauge_square(self, y) -> Fraction:
        s = sum(int(c) * int(c) for c in y)
        r = Fraction(self.radius)
        return Fraction(s) / (r * r)

    def float_gauge(self, x) -> float:
        return math.sqrt(sum(c * c for c in x)) / self.radius

    def boundary_distance(self, x, t: float) -> float:
        return abs(math.sqrt(sum(c * c for c in x)) - t * self.radius)

    def _scan(self, t: float, cap: int) -> list[tuple[int, ...]]:
        # integer fast path: |y|^2 <= smax  <=>  gauge < t
        smax = _strict_int_below((Fraction(t) * Fraction(self.radius)) ** 2)
        if smax < 0:
            return []
        b = math.isqrt(smax)
        if (2 * b + 1) ** self.k > cap:
            raise BudgetError("lattice point cap", (2 * b + 1) ** self.k, cap)
        if self.k == 1:
            return [(y,) for y in range(-b, b + 1)]
        axes = [np.arange(-b, b + 1, dtype=np.int64)] * self.k
        mesh = np.meshgrid(*axes, indexing="ij")
        ss = sum(m.astype(np.int64) ** 2 for m in mesh)
        mask = ss <= smax
        cols = [m[mask] for m in mesh]
        out = sorted(zip(*[c.tolist() for c in cols]))
        return [tuple(p) for p in out]


@dataclass(frozen=True)
class Cube(ConvexBody):
    """Open cube (-h, h)^k; requires h * sqrt(k) <= 1 to fit in the unit ball."""

    halfside: float = 1.0
    _k: int = 1

    kind = "cube"

    def __post_init__(self) -> None:
        if self.halfside <= 0:
            raise ValueError("halfside must be positive")
        if self.halfside * math.sqrt(self._k) > 1 + 1e-12:
            raise ValueError("cube does not fit in the unit ball; shrink halfside")
        object.__setattr__(self, "k", self._k)
        object.__setattr__(self, "inner_radius", min(self.halfside, 1 - 2.0 ** -20))
        object.__setattr__(self, "outer_radius", self.halfside * math.sqrt(self._k))

    def gauge_square(self, y) -> Fraction:
        m = max(abs(int(c)) for c in y)
        h = Fraction(self.halfside)
        return Fraction(m * m) / (h * h)

    def float_gauge(self, x) -> float:
        return max(abs(c) for c in x) / self.halfside

    def boundary_distance(self, x, t: float) -> float:
        s = t * self.halfside
        if max(abs(c) for c in x) <= s:
            return s - max(abs(c) for c in x)
        return math.sqrt(sum(max(abs(c) - s, 0.0) ** 2 for c in x))

    def _scan(self, t: float, cap: int) -> list[tuple[int, ...]]:
        b = _strict_int_below(Fraction(t) * Fraction(self.halfside))
        if b < 0:
            return []
        if (2 * b + 1) ** self.k > cap:
            raise BudgetError("lattice point cap", (2 * b + 1) ** self.k, cap)
        return [tuple(p) for p in _box_iter(b, self.k)]


@dataclass(frozen=True)
class DiagonalEllipsoid(ConvexBody):
    """Open ellipsoid sum (y_i / a_i)^2 < 1 with semi-axes a_i <= 1."""

    semiaxes: tuple[float, ...] = (1.0,)

    kind = "ellipsoid"

    def __post_init__(self) -> None:
        if not self.semiaxes or any(a <= 0 or a > 1 for a in self.semiaxes):
            raise ValueError("semi-axes must lie in (0, 1]")
        object.__setattr__(self, "k", len(self.semiaxes))
        object.__setattr__(self, "inner_radius", min(self.semiaxes))
        object.__setattr__(self, "outer_radius", max(self.semiaxes))

    def gauge_square(self, y) -> Fraction:
        total = Fraction(0)
        for c, a in zip(y, self.semiaxes):
            af = Fraction(a)
            total += Fraction(int(c) * int(c)) / (af * af)
        return total

    def float_gauge(self, x) -> float:
        return math.sqrt(sum((c / a) ** 2 for c, a in zip(x, self.semiaxes)))

    def boundary_distance(self, x, t: float) -> float:
        axes = [t * a for a in self.semiaxes]
        p = [abs(float(c)) for c in x]
        if all(c == 0 for c in p):
            return min(axes)
        cands = [self._foot_distance_generic(axes, p)]
        # a query on a symmetry hyperplane can have its nearest point off the
        # plane: one branch per zero coordinate, with lam pinned at -A_i^2
        for i, pi in enumerate(p):
            if pi != 0:
                continue
            ai2 = axes[i] * axes[i]
            ok = True
            foot = [0.0] * len(p)
            resid = 1.0
            for j, pj in enumerate(p):
                if j == i or pj == 0:
                    continue
                den = axes[j] * axes[j] - ai2
                if den == 0:
                    ok = False
                    break
                foot[j] = axes[j] * axes[j] * pj / den
                resid -= (foot[j] / axes[j]) ** 2
            if ok and resid >= 0:
                # the freed coordinate contributes (0 - A_i sqrt(resid))^2
                d2 = sum((pj - fj) ** 2
                         for j2, (pj, fj) in enumerate(zip(p, foot)) if j2 != i)
                cands.append(math.sqrt(d2 + ai2 * resid))
        return min(cands)

    @staticmethod
    def _foot_distance_generic(axes, p) -> float:
        # largest root of sum over nonzero coords of (A_i p_i/(A_i^2+lam))^2 = 1
        # on (-min_{p_i>0} A_i^2, inf); strictly decreasing, so bisection works
        active = [(a, c) for a, c in zip(axes, p) if c > 0]
        amin2 = min(a * a for a, _ in active)

        def f(lam: float) -> float:
            return sum((a * c / (a * a + lam)) ** 2 for a, c in active) - 1.0

        lo = -amin2 * (1 - 1e-13)
        hi = max(1.0, math.sqrt(sum(c * c for c in p))) * max(axes) + max(axes) ** 2
        while f(hi) > 0:
            hi *= 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if f(mid) > 0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * max(1.0, abs(hi)):
                break
        lam = 0.5 * (lo + hi)
        d2 = 0.0
        for a, c in zip(axes, p):
            foot = a * a * c / (a * a + lam) if c > 0 else 0.0
            d2 += (c - foot) ** 2
        return math.sqrt(d2)


def euclidean_ball(k: int, radius: float = 1.0) -> EuclideanBall:
    return EuclideanBall(radius=radius, _k=k)


def cube(k: int, halfside: float | None = None) -> Cube:
    if halfside is None:
        halfside = 1.0 / math.sqrt(k)
    return Cube(halfside=halfside, _k=k)


def ellipsoid(semiaxes: Sequence[float]) -> DiagonalEllipsoid:
    return DiagonalEllipsoid(semiaxes=tuple(float(a) for a in semiaxes))


@dataclass(frozen=True)
class LatticePointSet:
    """Deduplicated, lexicographically sorted lattice points of a dilated body."""

    body: ConvexBody
    t: float
    points: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)


def lattice_points(body: ConvexBody, t: float, cap: int = DEFAULT_POINT_CAP) -> LatticePointSet:
    """Enumerate the lattice points of the open dilate by ``t``.

    For t < 1 the dilate meets the lattice only at the origin (the body sits
    inside the unit ball), and that is what is returned.
    """
    if t < 0:
        raise PreconditionError("dilation parameter must be >= 0")
    if t < 1:
        return LatticePointSet(body, t, ((0,) * body.k,))
    pts = body._scan(t, cap)
    return LatticePointSet(body, t, tuple(sorted(pts)))


def annulus_points(body: ConvexBody, t1: float, t2: float,
                   cap: int = DEFAULT_POINT_CAP) -> LatticePointSet:
    """Lattice points of the dilate by ``t2`` that are not in the dilate by ``t1``.

    Single scan of the outer box; the inner set is never materialized.
    """
    if not 0 <= t1 <= t2:
        raise PreconditionError("need 0 <= t1 <= t2")
    outer = lattice_points(body, t2, cap)
    if t1 < 1:
        origin = (0,) * body.k
        pts = tuple(p for p in outer.points if p != origin)
        return LatticePointSet(body, t2, pts)
    t1sq = Fraction(t1) * Fraction(t1)
    pts = tuple(p for p in outer.points if not body.gauge_square(p) < t1sq)
    return LatticePointSet(body, t2, pts)


def near_boundary_count(body: ConvexBody, t: float, s: float,
                        cap: int = DEFAULT_POINT_CAP) -> int:
    """Count lattice points within distance ``s`` of the boundary of the dilate."""
    if not 1 <= s <= body.diameter(t):
        raise PreconditionError("need 1 <= s <= diam of the dilate")
    b = int(math.ceil(t * body.outer_radius + s)) + 1
    if (2 * b + 1) ** body.k > cap:
        raise BudgetError("near-boundary scan cap", (2 * b + 1) ** body.k, cap)
    count = 0
    for y in _box_iter(b, body.k):
        if body.boundary_distance(y, t) < s:
            count += 1
    return count


def gauge_groups(body: ConvexBody, gauge_max: float,
                 cap: int = DEFAULT_POINT_CAP) -> list[tuple[float, list[tuple[int, ...]]]]:
    """Nonzero lattice points with gauge < gauge_max, grouped by exact gauge value.

    Groups are returned in strictly increasing gauge order; grouping keys are
    exact rationals so points entering a dilation family at the same scale are
    never split by floating-point noise.
    """
    pts = body._scan(float(gauge_max), cap)
    groups: dict[Fraction, list[tuple[int, ...]]] = {}
    for p in pts:
        if all(c == 0 for c in p):
            continue
        groups.setdefault(body.gauge_square(p), []).append(p)
    out = []
    for key in sorted(groups):
        out.append((math.sqrt(float(key)), sorted(groups[key])))
    return out


def audit_inclusion(body: ConvexBody, n_dirs: int = 64, seed: int = 7) -> bool:
    """Sample sphere directions to confirm B(0, c) <= body <= B(0, 1)."""
    import random

    rng = random.Random(seed)
    c = body.inner_radius * (1 - 1e-9)
    for _ in range(n_dirs):
        u = [rng.gauss(0, 1) for _ in range(body.k)]
        n = math.sqrt(sum(x * x for x in u)) or 1.0
        u = [x / n for x in u]
        inside = [c * x for x in u]
        if body.float_gauge(inside) >= 1:
            return False
        outside = [(1 + 1e-9) * x for x in u]
        if body.float_gauge(outside) < 1 and math.sqrt(sum(x * x for x in outside)) > 1:
            return False
    return True
