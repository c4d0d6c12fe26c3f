"""Discrete averaging and truncated singular convolution operators along
monomial or general polynomial mappings, with sparse and torus-FFT
application paths, and the exact per-block kernel 1-variation table.

Scale convention: an operator at parameter t has radius 2**t.  Averaging
kernels place mass 1/#points at the image of every lattice point of the
dilate (image collisions accumulate); singular kernels place the kernel value
at the image of every nonzero point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetError, PreconditionError
from .lattice import ConvexBody, gauge_groups, lattice_points
from .multiindex import MultiIndexSet, canonical_map
from .variation import PathField, jump_seminorm, r_variation
from .expsums import IntegerPolynomial

DEFAULT_OUTPUT_CAP = 10 ** 7


# ---------------------------------------------------------------------------
# lattice functions
# ---------------------------------------------------------------------------


class LatticeFunction:
    """Finitely supported complex function on an integer lattice.

    Zero values are pruned; iteration order is lexicographic in the site, so
    serialized output is byte-stable.
    """

    __slots__ = ("dim", "_data")

    def __init__(self, dim: int, data: dict | None = None) -> None:
        self.dim = dim
        self._data: dict[tuple[int, ...], complex] = {}
        if data:
            for x, v in data.items():
                self[tuple(int(c) for c in x)] = complex(v)

    @classmethod
    def delta(cls, dim: int, site: Sequence[int] | None = None) -> "LatticeFunction":
        site = tuple(site) if site is not None else (0,) * dim
        return cls(dim, {site: 1.0 + 0j})

    def __getitem__(self, x) -> complex:
        return self._data.get(tuple(x), 0j)

    def __setitem__(self, x, v: complex) -> None:
        x = tuple(x)
        if len(x) != self.dim:
            raise ValueError("site has wrong dimension")
        if v == 0:
            self._data.pop(x, None)
        else:
            self._data[x] = complex(v)

    def items(self):
        return sorted(self._data.items())

    def sites(self):
        return sorted(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def norm_l1(self) -> float:
        return sum(abs(v) for v in self._data.values())

    def total(self) -> complex:
        return sum(self._data.values())

    def scaled(self, c: complex) -> "LatticeFunction":
        return LatticeFunction(self.dim, {x: c * v for x, v in self._data.items()})

    # -- text and JSON round trips ------------------------------------------

    def to_text(self) -> str:
        lines = []
        for x, v in self.items():
            coords = " ".join(str(c) for c in x)
            lines.append(f"{coords} {v.real!r} {v.imag!r}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "LatticeFunction":
        data = {}
        dim = None
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if dim is None:
                dim = len(parts) - 2
                if dim < 1:
                    raise ValueError("each line needs coordinates plus re and im")
            x = tuple(int(c) for c in parts[:dim])
            data[x] = complex(float(parts[dim]), float(parts[dim + 1]))
        if dim is None:
            raise ValueError("empty lattice function file")
        return cls(dim, data)

    def to_json(self) -> str:
        pts = [{"x": list(x), "re": v.real, "im": v.imag} for x, v in self.items()]
        return json.dumps({"dim": self.dim, "points": pts})

    @classmethod
    def from_json(cls, text: str) -> "LatticeFunction":
        obj = json.loads(text)
        data = {tuple(p["x"]): complex(p["re"], p["im"]) for p in obj["points"]}
        return cls(obj["dim"], data)


# ---------------------------------------------------------------------------
# Calderon-Zygmund kernel specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CZKernelSpec:
    """A truncation-compatible singular kernel paired with the body for which
    its annulus integrals vanish.

    ``holder_constant`` records the constant in the smoothness inequality
    |K(x) - K(x+y)| <= C |y|^sigma |x|^(-k-sigma) for |y| <= |x|/2; the size
    inequality |K| <= |x|^(-k) holds with constant one for the shipped kernels.
    """

    name: str
    k: int
    sigma: float
    holder_constant: float
    body: ConvexBody
    evaluate: Callable[[Sequence[float]], complex] = field(compare=False)


def cz_inverse(body: ConvexBody) -> CZKernelSpec:
    """K(y) = 1/y in one dimension, paired with a symmetric interval."""
    if body.k != 1:
        raise ValueError("1/y kernel requires k = 1")
    return CZKernelSpec("inverse", 1, 1.0, 2.0, body, lambda y: 1.0 / y[0])


def cz_quadrupole(body: ConvexBody) -> CZKernelSpec:
    """K(y) = (y1^2 - y2^2)/|y|^4, zero spherical mean, paired with a ball."""
    if body.k != 2:
        raise ValueError("quadrupole kernel requires k = 2")

    def ev(y):
        s = y[0] * y[0] + y[1] * y[1]
        return (y[0] * y[0] - y[1] * y[1]) / (s * s)

    return CZKernelSpec("quadrupole", 2, 1.0, 8.0, body, ev)


def cz_product(body: ConvexBody) -> CZKernelSpec:
    """K(y) = y1*y2/|y|^4, odd in each variable, paired with a ball."""
    if body.k != 2:
        raise ValueError("product kernel requires k = 2")

    def ev(y):
        s = y[0] * y[0] + y[1] * y[1]
        return (y[0] * y[1]) / (s * s)

    return CZKernelSpec("product", 2, 1.0, 8.0, body, ev)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadonKernel:
    """A finitely supported convolution kernel at scale 2**t.

    For the averaging flavor the integer multiplicities and the normalizer
    are kept alongside the complex entries, so the unit total mass is exact.
    """

    flavor: str                  # "averaging" | "singular"
    t: float
    dim: int
    entries: tuple[tuple[tuple[int, ...], complex], ...]
    multiplicities: tuple[tuple[tuple[int, ...], int], ...] | None = None
    normalizer: int | None = None

    def entry_dict(self) -> dict[tuple[int, ...], complex]:
        return dict(self.entries)

    def total_mass(self):
        if self.flavor == "averaging" and self.multiplicities is not None:
            return Fraction(sum(m for _, m in self.multiplicities), self.normalizer)
        return sum(v for _, v in self.entries)

    def norm_l1(self) -> float:
        return sum(abs(v) for _, v in self.entries)

    def support_radius(self) -> tuple[int, ...]:
        radii = [0] * self.dim
        for x, _ in self.entries:
            for i, c in enumerate(x):
                radii[i] = max(radii[i], abs(c))
        return tuple(radii)

    def __len__(self) -> int:
        return len(self.entries)


def _image_multiplicities(points, mapper) -> dict[tuple[int, ...], int]:
    mult: dict[tuple[int, ...], int] = {}
    for y in points:
        x = mapper(y)
        mult[x] = mult.get(x, 0) + 1
    return mult


def averaging_kernel(body: ConvexBody, t: float, gammas: MultiIndexSet,
                     cap: int = 10 ** 8) -> RadonKernel:
    """Uniform average over the lattice points of the dilate by 2**t, pushed
    through the canonical monomial map.  Collisions accumulate mass."""
    if t < 0:
        raise PreconditionError("t must be >= 0")
    pts = lattice_points(body, 2.0 ** t, cap)
    c = len(pts)
    mult = _image_multiplicities(pts, lambda y: canonical_map(y, gammas))
    entries = tuple((x, complex(m) / c) for x, m in sorted(mult.items()))
    return RadonKernel("averaging", t, len(gammas), entries,
                       tuple(sorted(mult.items())), c)


def singular_kernel(body: ConvexBody, t: float, gammas: MultiIndexSet,
                    cz: CZKernelSpec, cap: int = 10 ** 8) -> RadonKernel:
    """Kernel values at nonzero lattice points of the dilate, pushed through
    the canonical map; empty when the dilate contains only the origin."""
    if t < 0:
        raise PreconditionError("t must be >= 0")
    if cz.k != body.k:
        raise ValueError("kernel and body dimensions differ")
    pts = lattice_points(body, 2.0 ** t, cap)
    acc: dict[tuple[int, ...], complex] = {}
    origin = (0,) * body.k
    for y in pts:
        if y == origin:
            continue
        x = canonical_map(y, gammas)
        acc[x] = acc.get(x, 0j) + complex(cz.evaluate(y))
    entries = tuple((x, v) for x, v in sorted(acc.items()) if v != 0)
    return RadonKernel("singular", t, len(gammas), entries)


def radon_along_polynomials(polys: Sequence[IntegerPolynomial], body: ConvexBody,
                            t: float, flavor: str, gammas_unused=None,
                            cz: CZKernelSpec | None = None,
                            cap: int = 10 ** 8) -> RadonKernel:
    """Kernel along a general integer polynomial mapping y -> (P_1(y), ..., P_m(y))."""
    if flavor not in ("averaging", "singular"):
        raise ValueError("flavor must be 'averaging' or 'singular'")
    for p in polys:
        if p.k != body.k:
            raise ValueError("polynomial arity does not match the body dimension")
        if not p.is_integer_valued():
            raise ValueError("mapping polynomials must have integer coefficients")
    pts = lattice_points(body, 2.0 ** t, cap)

    def mapper(y):
        return tuple(int(p.evaluate(y)) for p in polys)

    if flavor == "averaging":
        c = len(pts)
        mult = _image_multiplicities(pts, mapper)
        entries = tuple((x, complex(m) / c) for x, m in sorted(mult.items()))
        return RadonKernel("averaging", t, len(polys), entries,
                           tuple(sorted(mult.items())), c)
    if cz is None:
        raise ValueError("singular flavor needs a kernel spec")
    origin = (0,) * body.k
    acc: dict[tuple[int, ...], complex] = {}
    for y in pts:
        if y == origin:
            continue
        x = mapper(y)
        acc[x] = acc.get(x, 0j) + complex(cz.evaluate(y))
    return RadonKernel("singular", t, len(polys),
                       tuple((x, v) for x, v in sorted(acc.items()) if v != 0))


# ---------------------------------------------------------------------------
# application paths
# ---------------------------------------------------------------------------


def apply(kernel: RadonKernel, f: LatticeFunction,
          out_cap: int = DEFAULT_OUTPUT_CAP) -> LatticeFunction:
    """Sparse convolution g(x) = sum_z kernel(z) f(x - z)."""
    if f.dim != kernel.dim:
        raise ValueError("kernel and function dimensions differ")
    if len(kernel) * len(f) > out_cap:
        raise BudgetError("sparse convolution output cap", len(kernel) * len(f), out_cap)
    acc: dict[tuple[int, ...], complex] = {}
    for z, w in kernel.entries:
        for x, v in f.items():
            site = tuple(a + b for a, b in zip(x, z))
            acc[site] = acc.get(site, 0j) + w * v
    return LatticeFunction(f.dim, acc)


def apply_on_torus(kernel: RadonKernel, grid: np.ndarray) -> np.ndarray:
    """Cyclic convolution on (Z/LZ)^dim via the multidimensional FFT.

    The grid must be a cube of side L exceeding twice the kernel's support
    radius in every coordinate; with that margin the result agrees with the
    sparse path wherever no wraparound occurs.
    """
    shape = grid.shape
    if len(shape) != kernel.dim or len(set(shape)) != 1:
        raise ValueError("grid must be a cube matching the kernel dimension")
    L = shape[0]
    radii = kernel.support_radius()
    if any(L <= 2 * r for r in radii):
        raise PreconditionError(
            f"torus side {L} does not exceed twice the support radius {radii}")
    kgrid = np.zeros(shape, dtype=complex)
    for z, w in kernel.entries:
        kgrid[tuple(c % L for c in z)] += w
    return np.fft.ifftn(np.fft.fftn(kgrid) * np.fft.fftn(np.asarray(grid, dtype=complex)))


# ---------------------------------------------------------------------------
# jump profiles of operator families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JumpProfile:
    field: PathField
    p: float
    jump_norm: float
    variations: dict

    def variation(self, r: float) -> list[float]:
        return self.variations[r]


def jump_profile(family: Sequence[tuple[float, RadonKernel]], f: LatticeFunction,
                 p: float, r_values: Sequence[float] = (2.0,),
                 out_cap: int = DEFAULT_OUTPUT_CAP) -> JumpProfile:
    """Apply a t-increasing kernel family to f and summarize the per-site paths."""
    ts = [t for t, _ in family]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise PreconditionError("family times must be strictly increasing")
    outputs = [apply(kern, f, out_cap) for _, kern in family]
    sites = sorted({x for g in outputs for x in g.sites()})
    values = tuple(tuple(g[x] for g in outputs) for x in sites)
    field = PathField(tuple(sites), tuple(float(t) for t in ts), values)
    jn = jump_seminorm(field, p)
    variations = {float(r): [r_variation(row, r) for row in values] for r in r_values}
    return JumpProfile(field, p, jn, variations)


# ---------------------------------------------------------------------------
# exact per-block kernel 1-variation table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockVariationRow:
    n: int
    value: float
    ratio: float          # value / n^(tau-1)


@dataclass(frozen=True)
class BlockVariationReport:
    tau: float
    flavor: str
    rows: tuple[BlockVariationRow, ...]
    fitted_slope: float

    def values(self) -> list[float]:
        return [r.value for r in self.rows]


def kernel_block_variation_report(body: ConvexBody, gammas: MultiIndexSet,
                                  flavor: str, tau: float, n_max: int,
                                  cz: CZKernelSpec | None = None,
                                  cap: int = 10 ** 8,
                                  fit_min_n: int = 1) -> BlockVariationReport:
    """Exact l^1 norms of the kernel 1-variation over the blocks
    t in [n^tau, (n+1)^tau], computed from the scales where the lattice set
    of the dilate actually changes.

    The kernel path t -> K_{2^t} is a step function; its 1-variation in l^1
    over a block is the sum of ||K_next - K_prev||_1 over the breakpoints
    inside the block, and each difference is computed incrementally from the
    lattice points entering at that breakpoint.
    """
    if not 0 < tau <= 1:
        raise PreconditionError("tau must lie in (0, 1]")
    if flavor not in ("averaging", "singular"):
        raise ValueError("flavor must be 'averaging' or 'singular'")
    if flavor == "singular" and cz is None:
        raise ValueError("singular flavor needs a kernel spec")

    gauge_hi = 2.0 ** ((n_max + 1) ** tau)
    groups = gauge_groups(body, gauge_hi, cap)

    totals = [Fraction(0) if flavor == "averaging" else 0.0
              for _ in range(n_max + 1)]
    origin_img = canonical_map((0,) * body.k, gammas)
    mult: dict[tuple[int, ...], int] = {origin_img: 1}
    count = 1

    for gauge, pts in groups:
        # block n owns the breakpoints with n^tau <= log2(gauge) < (n+1)^tau
        lg = math.log2(gauge) if gauge > 0 else 0.0
        block = int(math.floor(lg ** (1.0 / tau))) if lg > 0 else 0
        while lg >= (block + 1) ** tau:
            block += 1
        while block >= 1 and lg < block ** tau:
            block -= 1
        if block > n_max:
            break

        if flavor == "averaging":
            added = _image_multiplicities(pts, lambda y: canonical_map(y, gammas))
            new_count = count + len(pts)
            affected_mass = sum(mult.get(x, 0) for x in added)
            step = Fraction(count - affected_mass) * Fraction(new_count - count,
                                                              count * new_count)
            for x, a in added.items():
                m = mult.get(x, 0)
                step += abs(Fraction(m + a, new_count) - Fraction(m, count))
                mult[x] = m + a
            count = new_count
            if 0 <= block <= n_max:
                totals[block] += step
        else:
            added_w: dict[tuple[int, ...], complex] = {}
            for y in pts:
                x = canonical_map(y, gammas)
                added_w[x] = added_w.get(x, 0j) + complex(cz.evaluate(y))
            step_f = sum(abs(v) for v in added_w.values())
            if 0 <= block <= n_max:
                totals[block] += step_f

    rows = []
    for n in range(1, n_max + 1):
        v = float(totals[n])
        rows.append(BlockVariationRow(n, v, v / n ** (tau - 1.0)))
    fit = [(math.log(r.n), math.log(r.value)) for r in rows
           if r.value > 0 and r.n >= fit_min_n]
    slope = float(np.polyfit([x for x, _ in fit], [y for _, y in fit], 1)[0]) \
        if len(fit) >= 2 else float("nan")
    return BlockVariationReport(tau, flavor, tuple(rows), slope)
