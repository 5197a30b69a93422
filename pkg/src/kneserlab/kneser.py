"""Statistics of the subgraph of KG(n, k) induced on a family of k-sets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import DomainError
from .setkit import KSetLike, Params, as_mask, binom, lex_key, to_elements, to_mask

_CHUNK = 1024


@dataclass(frozen=True)
class Family:
    """A deduplicated, lex-sorted collection of k-subsets of [n] (bitmasks)."""

    params: Params
    members: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.params
        seen = set()
        for m in self.members:
            if m < 0 or m >> p.n or m.bit_count() != p.k:
                raise DomainError(f"{to_elements(m)} is not a {p.k}-subset of [{p.n}]")
            seen.add(m)
        object.__setattr__(self, "members", tuple(sorted(seen, key=lex_key)))

    @classmethod
    def of(cls, p: Params, sets: Iterable[KSetLike]) -> "Family":
        return cls(p, tuple(as_mask(s, p.n, p.k) for s in sets))

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, s) -> bool:
        return as_mask(s, self.n) in self._member_set

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    def sets(self) -> list[tuple[int, ...]]:
        return [to_elements(m) for m in self.members]

    def relabel(self, perm: dict[int, int] | list[int]) -> "Family":
        """Apply the ground-set map ``x -> perm[x]`` (dict or 1-based list with perm[0] unused)."""
        image = [perm[x] for x in range(1, self.n + 1)]
        if sorted(image) != list(range(1, self.n + 1)):
            raise DomainError("relabel map is not a permutation of [n]")
        mapped = (to_mask(image[x - 1] for x in to_elements(m)) for m in self.members)
        return Family(self.params, tuple(mapped))

    def incidence(self) -> np.ndarray:
        """0/1 matrix with one row per member and one column per element."""
        inc = np.zeros((len(self.members), self.n), dtype=np.float32)
        for row, m in enumerate(self.members):
            for x in to_elements(m):
                inc[row, x - 1] = 1.0
        return inc


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max: int
    witness: int
    histogram: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class CProfile:
    """Normalised max number of members through an i-set, with its witness."""

    i: int
    value: Fraction
    witness: int
    count: int


@dataclass(frozen=True)
class Cover:
    size: int
    witness: tuple[int, ...]
    empty_family: bool = False


def _check_same(f: Family, a: KSetLike) -> int:
    return as_mask(a, f.n, f.k)


def degree(f: Family, a: KSetLike) -> int:
    """Number of members of ``f`` disjoint from ``a`` (``a`` need not be a member)."""
    a = _check_same(f, a)
    return sum(1 for b in f.members if not a & b)


def degrees(f: Family) -> np.ndarray:
    """Degree of every member inside KG(f), in member order."""
    m = len(f)
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    inc = f.incidence()
    out = np.empty(m, dtype=np.int64)
    for start in range(0, m, _CHUNK):
        block = inc[start:start + _CHUNK] @ inc.T
        out[start:start + _CHUNK] = (block == 0).sum(axis=1)
    return out


def max_degree(f: Family) -> DegreeProfile:
    if len(f) == 0:
        raise DomainError("max_degree of an empty family")
    degs = degrees(f)
    best = int(np.argmax(degs))
    hist = Counter(int(d) for d in degs)
    return DegreeProfile(
        degrees=tuple(int(d) for d in degs),
        max=int(degs[best]),
        witness=f.members[best],
        histogram=dict(sorted(hist.items())),
    )


def edge_count(f: Family) -> int:
    total = int(degrees(f).sum())
    return total // 2


def cross_edges(g: Iterable[int], h: Iterable[int]) -> int:
    """Number of disjoint pairs (G, H) with G in g and H in h."""
    h = list(h)
    return sum(1 for a in g for b in h if not a & b)


def is_intersecting(f: Family) -> bool:
    members = f.members
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not a & b:
                return False
    return True


def restrict_avoiding(f: Family, p: KSetLike) -> Family:
    """Members disjoint from ``p``."""
    p = as_mask(p, f.n)
    return Family(f.params, tuple(m for m in f.members if not m & p))


def restrict_through(f: Family, p: KSetLike) -> Family:
    """Members containing ``p``, with ``p`` removed; a family of (k - |p|)-sets."""
    p = as_mask(p, f.n)
    size = p.bit_count()
    if not (1 <= size < f.k):
        raise DomainError(f"F(P) needs 1 <= |P| < k, got |P|={size}, k={f.k}")
    sub = Params(f.n, f.k - size)
    return Family(sub, tuple(m & ~p for m in f.members if m & p == p))


def restrict(f: Family, p: KSetLike) -> tuple[Family, Family]:
    """Return ``(F(P), F(P-bar))``."""
    return restrict_through(f, p), restrict_avoiding(f, p)


def _through_counts(f: Family, i: int) -> Counter:
    counts: Counter = Counter()
    for m in f.members:
        for sub in combinations(to_elements(m), i):
            counts[to_mask(sub)] += 1
    return counts


def concentration(f: Family, i: int) -> CProfile:
    """c(i) for any 1 <= i <= k; c(k) is 1 for a nonempty family."""
    if len(f) == 0:
        raise DomainError("concentration of an empty family")
    if not (1 <= i <= f.k):
        raise DomainError(f"need 1 <= i <= k, got i={i}, k={f.k}")
    counts = _through_counts(f, i)
    top = max(counts.values())
    witness = min((s for s, c in counts.items() if c == top), key=lex_key)
    return CProfile(i=i, value=Fraction(top, binom(f.n - i, f.k - i)), witness=witness, count=top)


def c_profile(f: Family, i: int) -> CProfile:
    if not (1 <= i < f.k):
        raise DomainError(f"c_profile needs 1 <= i < k, got i={i}, k={f.k}")
    return concentration(f, i)


def _hittable(sets: list[int], allowed: int, budget: int) -> bool:
    """Can ``budget`` elements of ``allowed`` meet every mask in ``sets``?"""
    if not sets:
        return True
    if budget == 0:
        return False
    # branch on the member with the fewest usable elements
    pivot = min(sets, key=lambda s: (s & allowed).bit_count())
    options = pivot & allowed
    while options:
        low = options & -options
        options ^= low
        rest = [s for s in sets if not s & low]
        if _hittable(rest, allowed, budget - 1):
            return True
    return False


def covering_number(f: Family) -> Cover:
    """tau(f) and the lexicographically smallest minimum transversal."""
    if len(f) == 0:
        return Cover(0, (), empty_family=True)
    sets = list(f.members)
    full = f.params.full_mask
    tau = 1
    while not _hittable(sets, full, tau):
        tau += 1
    chosen: list[int] = []
    remaining = sets
    lowest = 1
    for slot in range(tau, 0, -1):
        for x in range(lowest, f.n + 1):
            bit = 1 << (x - 1)
            rest = [s for s in remaining if not s & bit]
            above = full & ~((bit << 1) - 1)
            if _hittable(rest, above, slot - 1):
                chosen.append(x)
                remaining = rest
                lowest = x + 1
                break
    return Cover(tau, tuple(chosen))
