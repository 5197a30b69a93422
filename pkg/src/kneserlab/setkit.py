"""k-subsets of [n] as integer bitmasks.

Element ``i`` (1-based) lives at bit ``i - 1``.  Lexicographic order is the
order of sorted element tuples, which coincides with ordering by the smallest
element of the symmetric difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable, Iterator, Union

from .errors import BudgetError, DomainError

MAX_N = 128
ENUM_BUDGET = 5_000_000

KSetLike = Union[int, Iterable[int]]


def binom(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 outside 0 <= b <= a."""
    if a < 0:
        raise DomainError(f"binom: negative top argument {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class Params:
    n: int
    k: int

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise DomainError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.n > MAX_N:
            raise BudgetError(f"n={self.n} exceeds the supported width {MAX_N}")

    @property
    def total(self) -> int:
        return math.comb(self.n, self.k)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def require_disjoint_pairs(self) -> None:
        if self.n < 2 * self.k:
            raise DomainError(f"need n >= 2k, got n={self.n}, k={self.k}")


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << (x - 1)
    return mask


def to_elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def as_mask(s: KSetLike, n: int, size: int | None = None) -> int:
    """Normalise an int mask or an iterable of elements, validating range and size."""
    if isinstance(s, int):
        mask = s
        if mask < 0 or mask >> n:
            raise DomainError(f"mask {mask:#x} has bits outside [1..{n}]")
    else:
        elems = list(s)
        if any(not (1 <= x <= n) for x in elems):
            raise DomainError(f"elements {elems} not within [1..{n}]")
        if len(set(elems)) != len(elems):
            raise DomainError(f"repeated elements in {elems}")
        mask = to_mask(elems)
    if size is not None and mask.bit_count() != size:
        raise DomainError(f"{to_elements(mask)} does not have size {size}")
    return mask


def lex_key(mask: int) -> tuple[int, ...]:
    return to_elements(mask)


def lex_rank(s: KSetLike, p: Params) -> int:
    """Position of ``s`` among all k-subsets of [n] in lexicographic order."""
    elems = to_elements(as_mask(s, p.n, p.k))
    n, k = p.n, p.k
    rank = 0
    prev = 0
    for i, a in enumerate(elems, start=1):
        for j in range(prev + 1, a):
            rank += math.comb(n - j, k - i)
        prev = a
    return rank


def lex_unrank(r: int, p: Params) -> int:
    n, k = p.n, p.k
    if not (0 <= r < p.total):
        raise DomainError(f"rank {r} outside [0, {p.total})")
    elems = []
    x = 1
    for i in range(k, 0, -1):
        # skip every block of sets whose next element is x
        while True:
            block = math.comb(n - x, i - 1)
            if r < block:
                break
            r -= block
            x += 1
        elems.append(x)
        x += 1
    return to_mask(elems)


def enumerate_all(p: Params, budget: int = ENUM_BUDGET) -> Iterator[int]:
    """Yield every k-subset of [n] once, in lexicographic order."""
    if p.total > budget:
        raise BudgetError(f"C({p.n},{p.k}) = {p.total} exceeds enumeration budget {budget}")
    for combo in combinations(range(1, p.n + 1), p.k):
        yield to_mask(combo)


def lex_family(m: int, p: Params):
    """The first ``m`` k-sets in lexicographic order."""
    from .kneser import Family

    if not (0 <= m <= p.total):
        raise DomainError(f"m={m} outside [0, C({p.n},{p.k})]")
    if m > ENUM_BUDGET:
        raise BudgetError(f"m={m} exceeds enumeration budget {ENUM_BUDGET}")
    combos = islice(combinations(range(1, p.n + 1), p.k), m)
    return Family(p, tuple(to_mask(c) for c in combos))
