"""Structured denominator sets, reduced-fraction families, coprime-product
partitions, the balanced pair coloring, and supporting combinatorics.

The denominator set for a resolution N and roughness parameter rho is built
from a prime window (N^(rho/2), N]: every member factors uniquely as a divisor
of the window-free lcm Q0 times a window-smooth number at most N.  Below an
exactly computed cutoff the set is simply {1, ..., N}.  All big-integer work
(Q0, lcm identities) is exact.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import BudgetError, PreconditionError
from .expsums import RationalPoint

DEFAULT_MEMBER_CAP = 2_000_000


# ---------------------------------------------------------------------------
# primes and lcm
# ---------------------------------------------------------------------------


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = b"\x00" * len(range(p * p, n + 1, p))
    return [i for i in range(2, n + 1) if sieve[i]]


def prime_window(N: int, rho: float) -> list[int]:
    """Primes p with N^(rho/2) < p <= N, with exact boundary handling.

    For rho with a small exact binary representation the strict lower bound is
    decided in integer arithmetic (p^(2 den) > N^num); otherwise in floats.
    """
    rho_f = Fraction(rho)
    out = []
    for p in primes_up_to(N):
        if rho_f.denominator <= 64:
            above = p ** (2 * rho_f.denominator) > N ** rho_f.numerator
        else:
            above = p > N ** (rho / 2.0)
        if above:
            out.append(p)
    return out


def lcm_first_n(N: int) -> int:
    """lcm(1, ..., N) as the exact product of maximal prime powers <= N."""
    if N < 1:
        raise PreconditionError("N must be >= 1")
    out = 1
    for p in primes_up_to(N):
        pe = p
        while pe * p <= N:
            pe *= p
        out *= pe
    return out


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def jordan_totient(q: int, d: int) -> int:
    """Count of a in {1..q}^d with gcd(q, a_1, ..., a_d) = 1."""
    out = q ** d
    for p, _ in _factorize(q):
        out = out // p ** d * (p ** d - 1)
    return out if q > 1 else 1


# ---------------------------------------------------------------------------
# denominator sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DenominatorConfig:
    rho: float
    D: int
    small_cutoff: int

    @classmethod
    def for_rho(cls, rho: float) -> "DenominatorConfig":
        if not 0 < rho < 2:
            raise PreconditionError("rho must lie in (0, 2)")
        D = int(math.ceil(Fraction(2) / Fraction(rho)))
        return cls(rho, D, _small_cutoff(rho, D))


def _product_branch_holds(N: int, rho: float, D: int) -> bool:
    # 3^(2 D N^(rho/2)) * N <= e^(N^rho), compared in logs
    return 2 * D * N ** (rho / 2.0) * math.log(3.0) + math.log(N) <= N ** rho


def _small_cutoff(rho: float, D: int, run: int = 64) -> int:
    """Least N such that the product-branch inequality holds from N onward.

    The defining comparison mixes irrational powers, so it is evaluated in
    floating point; a run of consecutive successes guards the boundary.
    """
    N = 1
    while True:
        if _product_branch_holds(N, rho, D) and all(
                _product_branch_holds(M, rho, D) for M in range(N, N + run)):
            return N
        N += 1


@dataclass(frozen=True)
class DenominatorSet:
    """The structured denominator set at resolution N.

    ``branch`` is "small" (members are 1..N) or "product" (divisors of Q0
    times window-smooth numbers <= N); ``witness`` maps each member to its
    unique (divisor, smooth) factorization in the product branch.
    """

    N: int
    config: DenominatorConfig
    branch: str
    Q0: int
    window: tuple[int, ...]
    smooth: tuple[int, ...]
    members: tuple[int, ...]
    witness: dict

    def __len__(self) -> int:
        return len(self.members)

    def member_set(self) -> set[int]:
        return set(self.members)

    def lcm(self) -> int:
        if self.branch == "small":
            return lcm_first_n(self.N)
        out = self.Q0
        for s in self.smooth:
            out = math.lcm(out, s)
        return out

    def max_member(self) -> int:
        return self.members[-1]

    def to_json(self) -> str:
        return json.dumps({
            "N": self.N,
            "rho": self.config.rho,
            "D": self.config.D,
            "small_cutoff": self.config.small_cutoff,
            "branch": self.branch,
            "Q0": str(self.Q0),
            "window": list(self.window),
            "smooth": list(self.smooth),
            "members": [str(m) for m in self.members],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "DenominatorSet":
        obj = json.loads(text)
        cfg = DenominatorConfig(obj["rho"], obj["D"], obj["small_cutoff"])
        return cls(obj["N"], cfg, obj["branch"], int(obj["Q0"]),
                   tuple(obj["window"]), tuple(obj["smooth"]),
                   tuple(int(m) for m in obj["members"]), {})


def _divisors_from_factorization(fact: list[tuple[int, int]]) -> list[int]:
    divs = [1]
    for p, e in fact:
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def build_denominator_set(N: int, rho: float,
                          member_cap: int = DEFAULT_MEMBER_CAP) -> DenominatorSet:
    """Construct the denominator set at resolution N.

    The three structural properties (contains 1..N, bounded above by
    max(N, e^(N^rho)), lcm equal to lcm(1..N)) are asserted at build time.
    """
    if N < 1:
        raise PreconditionError("N must be >= 1")
    cfg = DenominatorConfig.for_rho(rho)
    window = tuple(prime_window(N, rho))
    window_set = set(window)

    # Q0 = lcm of numbers <= N with no prime factor in the window
    Q0 = 1
    for p in primes_up_to(N):
        if p in window_set:
            continue
        pe = p
        while pe * p <= N:
            pe *= p
        Q0 *= pe

    if N < cfg.small_cutoff:
        members = tuple(range(1, N + 1))
        ds = DenominatorSet(N, cfg, "small", Q0, window, (), members, {})
    else:
        fact = []
        for p in primes_up_to(N):
            if p in window_set:
                continue
            e = 0
            pe = p
            while pe <= N:
                e += 1
                pe *= p
            fact.append((p, e))
        n_divisors = math.prod(e + 1 for _, e in fact)
        smooth = [1]
        for n in range(2, N + 1):
            m = n
            for p in window:
                while m % p == 0:
                    m //= p
            if m == 1:
                smooth.append(n)
        if n_divisors * len(smooth) > member_cap:
            raise BudgetError("denominator member cap",
                              n_divisors * len(smooth), member_cap)
        divisors = _divisors_from_factorization(fact)
        witness = {}
        for d in divisors:
            for s in smooth:
                witness[d * s] = (d, s)
        members = tuple(sorted(witness))
        ds = DenominatorSet(N, cfg, "product", Q0, window, tuple(smooth),
                            members, witness)

    # structural assertions
    mset = ds.member_set()
    assert all(n in mset for n in range(1, N + 1)), "1..N not contained"
    bound_log = max(math.log(N), float(N) ** rho)
    assert math.log(ds.max_member()) <= bound_log + 1e-9, "member exceeds bound"
    assert ds.lcm() == lcm_first_n(N), "lcm identity violated"
    return ds


# ---------------------------------------------------------------------------
# reduced fraction families
# ---------------------------------------------------------------------------


def reduced_residues(q: int, d: int, cap: int = 10 ** 7) -> list[tuple[int, ...]]:
    """All a in {1..q}^d with gcd(q, a_1, ..., a_d) = 1, lexicographically."""
    if q < 1 or d < 1:
        raise PreconditionError("need q >= 1 and d >= 1")
    if q ** d > cap:
        raise BudgetError("residue enumeration cap", q ** d, cap)
    out = [a for a in product(range(1, q + 1), repeat=d) if math.gcd(q, *a) == 1]
    assert len(out) == jordan_totient(q, d)
    return out


def fraction_family(denominators: Iterable[int], d: int,
                    cap: int = 10 ** 7) -> list[RationalPoint]:
    """Union over q of the reduced points a/q, canonical in [0,1)^d, deduplicated."""
    seen = set()
    out = []
    for q in sorted(set(denominators)):
        for a in reduced_residues(q, d, cap):
            pt = RationalPoint.make(a, q)
            key = (pt.q, pt.numerators)
            if key not in seen:
                seen.add(key)
                out.append(pt)
        if len(out) > cap:
            raise BudgetError("fraction family cap", len(out), cap)
    return out


def fraction_family_count(denominators: Iterable[int], d: int) -> int:
    """Cardinality of the family without materializing it (distinct q stay distinct)."""
    return sum(jordan_totient(q, d) for q in set(denominators))


# ---------------------------------------------------------------------------
# surjection families and coprime-product partitions
# ---------------------------------------------------------------------------


def surjection_family(V: Sequence, k: int, seed: int = 2024,
                      max_retries: int = 200,
                      audit_cap: int = 10 ** 6,
                      audit_samples: int = 10 ** 5) -> list[dict]:
    """Functions V -> {1..k} such that every k-subset is separated by some member.

    Randomized construction with at most ceil(k^(k+1)/k! * ln|V|) functions,
    resampled until the separation property holds; the property is audited
    exhaustively when the number of k-subsets is small, by random sampling
    otherwise.  Non-surjective functions are dropped afterwards (they can
    never witness separation, so dropping preserves the property).
    """
    V = sorted(V)
    n = len(V)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if n < k:
        return []     # no k-subsets: the property is vacuous
    if k == 1:
        return [{v: 1 for v in V}]
    if n == k:
        return [{v: i + 1 for i, v in enumerate(V)}]

    rng = random.Random(seed)
    r = max(1, math.ceil(k ** (k + 1) / math.factorial(k) * math.log(n)))

    def covered(fams: list[dict]) -> bool:
        if math.comb(n, k) <= audit_cap:
            from itertools import combinations
            for E in combinations(V, k):
                if not any(len({f[e] for e in E}) == k for f in fams):
                    return False
            return True
        for _ in range(audit_samples):
            E = rng.sample(V, k)
            if not any(len({f[e] for e in E}) == k for f in fams):
                return False
        return True

    for _ in range(max_retries):
        fams = [{v: rng.randrange(1, k + 1) for v in V} for _ in range(r)]
        if covered(fams):
            return [f for f in fams if set(f.values()) == set(range(1, k + 1))]
    raise RuntimeError("retry budget exhausted while building surjection family")


@dataclass(frozen=True)
class CoprimePowerPart:
    """A class of the partition together with its product-structure witness.

    ``factors[j]`` is a set of prime powers; the witness promises the members
    all factor as a product of exactly one element from each factor set, and
    the union of the factor sets is pairwise coprime.
    """

    k: int
    factors: tuple[frozenset, ...]
    members: tuple[int, ...]

    def validate(self, max_exponent: int) -> None:
        union = []
        for S in self.factors:
            for s in S:
                fact = _factorize(s)
                if len(fact) != 1 or fact[0][1] > max_exponent:
                    raise AssertionError(f"{s} is not an admissible prime power")
            union.extend(S)
        for i in range(len(union)):
            for j in range(i + 1, len(union)):
                if math.gcd(union[i], union[j]) != 1:
                    raise AssertionError("factor sets are not pairwise coprime")
        prime_to_slot = {}
        for j, S in enumerate(self.factors):
            for s in S:
                prime_to_slot[_factorize(s)[0][0]] = j
        for m in self.members:
            slots = set()
            for p, e in _factorize(m):
                pe = p ** e
                j = prime_to_slot.get(p)
                if j is None or pe not in self.factors[j]:
                    raise AssertionError(f"{m} does not factor through the witness")
                slots.add(j)
            if slots != set(range(self.k)):
                raise AssertionError(f"{m} misses a factor slot")


def enumerate_power_products(V: Sequence[int], D: int,
                             cap: int = 5_000_000) -> list[int]:
    """All products of 1..D distinct primes of V at exponents 1..D, plus 1."""
    from itertools import combinations

    est = sum(math.comb(len(V), k) * D ** k for k in range(1, D + 1)) + 1
    if est > cap:
        raise BudgetError("power product enumeration cap", est, cap)
    out = {1}
    for k in range(1, D + 1):
        for primes in combinations(sorted(V), k):
            for exps in product(range(1, D + 1), repeat=k):
                v = 1
                for p, e in zip(primes, exps):
                    v *= p ** e
                out.add(v)
    return sorted(out)


@dataclass(frozen=True)
class PartitionResult:
    N: int
    rho: float
    D: int
    parts: tuple[CoprimePowerPart, ...]
    universe_size: int

    @property
    def part_count(self) -> int:
        return len(self.parts)

    def to_json(self) -> str:
        return json.dumps({
            "N": self.N,
            "rho": self.rho,
            "D": self.D,
            "universe_size": self.universe_size,
            "parts": [{
                "k": p.k,
                "factor_sets": [sorted(S) for S in p.factors],
                "members": list(p.members),
            } for p in self.parts],
        }, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "PartitionResult":
        obj = json.loads(text)
        parts = tuple(
            CoprimePowerPart(p["k"],
                             tuple(frozenset(S) for S in p["factor_sets"]),
                             tuple(p["members"]))
            for p in obj["parts"])
        return cls(obj["N"], obj["rho"], obj["D"], parts, obj["universe_size"])


def partition_coprime_products(N: int, rho: float, seed: int = 2024) -> PartitionResult:
    """Partition the admissible products over the prime window into classes
    whose members live in a product of pairwise coprime prime-power sets.

    Construction: for every factor count k <= D, a separating family of
    functions V -> {1..k} splits the primes into slots; each slot pattern of
    exponents gives one class.  The resulting cover is canonicalized into a
    partition by first-class-wins assignment (subsets keep the witness).
    The class count is O(log N) for fixed rho.
    """
    if N < 2:
        raise PreconditionError("N must be >= 2")
    cfg = DenominatorConfig.for_rho(rho)
    V = prime_window(N, rho)
    universe = enumerate_power_products(V, cfg.D)
    assigned: set[int] = set()
    parts: list[CoprimePowerPart] = []

    # the k = 0 class: just {1}
    parts.append(CoprimePowerPart(0, (), (1,)))
    assigned.add(1)

    for k in range(1, cfg.D + 1):
        if len(V) < k:
            break
        fams = surjection_family(V, k, seed=seed + k)
        for i, f in enumerate(fams):
            slots = [sorted(p for p in V if f[p] == j + 1) for j in range(k)]
            if any(not s for s in slots):
                continue
            for exps in product(range(1, cfg.D + 1), repeat=k):
                factors = tuple(frozenset(p ** exps[j] for p in slots[j])
                                for j in range(k))
                members = []
                for combo in product(*[sorted(S) for S in factors]):
                    v = 1
                    for c in combo:
                        v *= c
                    if v not in assigned:
                        members.append(v)
                if not members:
                    continue
                members = tuple(sorted(set(members)))
                assigned.update(members)
                parts.append(CoprimePowerPart(k, factors, members))

    if assigned != set(universe):
        missing = sorted(set(universe) - assigned)[:5]
        raise AssertionError(f"cover failed to reach a partition; missing {missing}")
    return PartitionResult(N, rho, cfg.D, tuple(parts), len(universe))


# ---------------------------------------------------------------------------
# uniqueness property and the balanced pair coloring
# ---------------------------------------------------------------------------


def has_uniqueness_property(seq: Sequence) -> bool:
    """True iff some element of the sequence occurs exactly once."""
    counts: dict = {}
    for x in seq:
        counts[x] = counts.get(x, 0) + 1
    return any(c == 1 for c in counts.values())


def kappa_coloring(pairs: Sequence[tuple]) -> list[int]:
    """Pick one side of every pair so both chosen and rejected sides cover the
    full value set.

    Requires the flattened sequence to lack the uniqueness property.  The pair
    multigraph (indices vs. values) is regularized so every value has
    multiplicity exactly two, decomposed into even cycles, and 2-colored
    alternately along each cycle.
    """
    r = len(pairs)
    flat = [v for pr in pairs for v in pr]
    if has_uniqueness_property(flat):
        raise PreconditionError("input has the uniqueness property")

    # regularize multiplicities to exactly 2 by splitting off fresh symbols
    work = [list(pr) for pr in pairs]
    fresh = 0

    def multiplicities():
        c: dict = {}
        for pr in work:
            for v in pr:
                c[v] = c.get(v, 0) + 1
        return c

    while True:
        counts = multiplicities()
        heavy = [v for v, c in counts.items() if c >= 3]
        if not heavy:
            break
        occurrences = [(i, l) for i in range(r) for l in (0, 1)
                       if work[i][l] == heavy[0]]
        if counts[heavy[0]] >= 4:
            (i1, l1), (i2, l2) = occurrences[0], occurrences[1]
        else:
            # exactly two heavy values exist in this case (parity of 2r)
            other = heavy[1]
            (i1, l1) = occurrences[0]
            (i2, l2) = next((i, l) for i in range(r) for l in (0, 1)
                            if work[i][l] == other)
        sym = ("_fresh_", fresh)
        fresh += 1
        work[i1][l1] = sym
        work[i2][l2] = sym

    # every value now has multiplicity exactly 2: walk the even cycles
    edge_value = {(i, l): work[i][l] for i in range(r) for l in (0, 1)}
    by_value: dict = {}
    for e, v in edge_value.items():
        by_value.setdefault(v, []).append(e)
    color: dict = {}
    for start in edge_value:
        if start in color:
            continue
        e = start
        while e not in color:
            color[e] = 0
            v = edge_value[e]
            e1, e2 = by_value[v]
            partner = e2 if e == e1 else e1       # cross the value vertex
            color[partner] = 1
            i, l = partner
            e = (i, 1 - l)                        # cross the index vertex
    return [0 if color[(i, 0)] == 0 else 1 for i in range(r)]


# ---------------------------------------------------------------------------
# the l^1 vs l^r splitting inequality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool


def l1_lr_inequality_check(a: Sequence, r: int, cap: int = 10 ** 6) -> SplittingCheck:
    """Exact check of (sum a)^r <= (r(r-1))^(r-1) sum a_i^r + 2 sum over
    pairwise-distinct index tuples of a_{i1} ... a_{ir}."""
    from itertools import permutations

    vals = [Fraction(x) for x in a]
    if any(v < 0 for v in vals):
        raise PreconditionError("entries must be non-negative")
    if r < 1:
        raise PreconditionError("r must be >= 1")
    n = len(vals)
    if n ** r > cap:
        raise BudgetError("splitting inequality term cap", n ** r, cap)
    lhs = sum(vals, Fraction(0)) ** r
    diag = Fraction((r * (r - 1)) ** (r - 1)) * sum((v ** r for v in vals), Fraction(0))
    off = Fraction(0)
    for idx in permutations(range(n), r):
        prod_ = Fraction(1)
        for i in idx:
            prod_ *= vals[i]
        off += prod_
    rhs = diag + 2 * off
    return SplittingCheck(lhs, rhs, lhs <= rhs)
