"""Families with small pairwise intersections.

Two generators: Bernoulli thinning of a given family (retried until the draw
is both large enough and spread), and graphs of low-degree polynomials over a
prime field pushed into [n] by a random injection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import BudgetError, DomainError
from .kneser import Family
from .setkit import ENUM_BUDGET, Params, enumerate_all, to_mask


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """GF(q) for prime q, elements are ints in [0, q)."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise DomainError(f"{q} is not prime")
        self.q = q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.q)

    def evaluate(self, coeffs, x: int) -> int:
        """Horner evaluation; ``coeffs[j]`` multiplies x**j."""
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % self.q
        return acc

    def __repr__(self):
        return f"PrimeField({self.q})"


def max_pairwise_intersection(f: Family) -> tuple[int, tuple[int, int] | None]:
    """Largest |A & B| over distinct members, with the lex-first pair attaining it."""
    members = f.members
    if len(members) < 2:
        return 0, None
    best, pair = -1, None
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            size = (a & b).bit_count()
            if size > best:
                best, pair = size, (a, b)
    return best, pair


def intersection_union(f: Family) -> int:
    members = f.members
    union = 0
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            union |= a & b
    return union


@dataclass(frozen=True)
class SpreadFamily:
    family: Family
    spread: int
    mode: str
    seed: int
    success: bool = True
    q: int | None = None
    poly_degree: int | None = None
    phi: tuple[int, ...] | None = None
    attempts: int = 1
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.spread != max_pairwise_intersection(self.family)[0]:
            raise AssertionError("spread certificate does not match the family")

    def meta(self) -> dict:
        out = {"mode": self.mode, "seed": self.seed, "spread": self.spread,
               "success": self.success, "attempts": self.attempts}
        if self.q is not None:
            out.update(q=self.q, d=self.poly_degree, phi=list(self.phi))
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


def log2_floor(k: int) -> int:
    return k.bit_length() - 1


def sample_spread(g: Family, c: int, seed: int, max_retries: int = 50) -> SpreadFamily:
    """Keep each member of ``g`` with probability 2k^c/|g| until the sample has
    at least k^c sets and pairwise intersections at most floor(log2 k).

    Failure is returned, not raised: ``success`` is False and ``family`` holds
    the best draw (spread-valid and largest if any, else least spread).
    """
    k = g.k
    target = k**c
    threshold = log2_floor(k)
    if 2 * target > len(g):
        raise DomainError(f"2k^c = {2 * target} exceeds |g| = {len(g)}")
    prob = Fraction(2 * target, len(g))
    rng = random.Random(seed)
    best = None
    history = []
    for attempt in range(1, max_retries + 1):
        chosen = tuple(m for m in g.members if rng.random() < prob)
        fam = Family(g.params, chosen)
        spread, _ = max_pairwise_intersection(fam)
        history.append((len(fam), spread))
        if len(fam) >= target and spread <= threshold:
            return SpreadFamily(fam, spread, "monte-carlo", seed, attempts=attempt,
                                diagnostics={"target": target, "threshold": threshold})
        key = (spread <= threshold, len(fam) if spread <= threshold else -spread)
        if best is None or key > best[0]:
            best = (key, fam, spread)
    _, fam, spread = best
    return SpreadFamily(fam, spread, "monte-carlo", seed, success=False, attempts=max_retries,
                        diagnostics={"target": target, "threshold": threshold,
                                     "draws": history})


def choose_prime(p: Params) -> int:
    """Largest prime q with k <= q < n/k (so k*q cells fit in [n])."""
    n, k = p.n, p.k
    for q in range(-(-n // k) - 1, k - 1, -1):
        if q * k < n and is_prime(q):
            return q
    raise DomainError(f"no prime q with {k} <= q < {n}/{k}")


def polynomial_spread(p: Params, d: int, seed: int) -> SpreadFamily:
    """All graphs {(x, f(x)) : x in U} of polynomials of degree <= d over GF(q),
    U = {0..k-1}, mapped into [n] by a seeded random injection of U x GF(q)."""
    n, k = p.n, p.k
    if not (0 <= d < k):
        raise DomainError(f"need 0 <= d < k so distinct polynomials give distinct sets, got d={d}")
    q = choose_prime(p)
    if k * q > n:
        raise DomainError(f"injection needs k*q = {k * q} <= n = {n}")
    if q ** (d + 1) > ENUM_BUDGET:
        raise BudgetError(f"q^(d+1) = {q ** (d + 1)} sets exceeds budget")
    field_ = PrimeField(q)
    rng = random.Random(seed)
    # cell (x, y) has index x*q + y
    phi = tuple(rng.sample(range(1, n + 1), k * q))
    sets = []
    for coeffs in product(range(q), repeat=d + 1):
        sets.append(to_mask(phi[x * q + field_.evaluate(coeffs, x)] for x in range(k)))
    fam = Family(p, tuple(sets))
    if len(fam) != q ** (d + 1):
        raise AssertionError("polynomial graphs collided")
    spread, _ = max_pairwise_intersection(fam)
    return SpreadFamily(fam, spread, "polynomial", seed, q=q, poly_degree=d, phi=phi)


def heavy_intersectors(gprime: Family, l: int) -> int:
    """Number of k-subsets of [n] meeting at least ``l`` members of ``gprime``."""
    members = gprime.members
    if l <= 0:
        return gprime.params.total
    if l > len(members):
        return 0
    count = 0
    for a in enumerate_all(gprime.params):
        hits = 0
        for b in members:
            if a & b:
                hits += 1
                if hits >= l:
                    count += 1
                    break
    return count
