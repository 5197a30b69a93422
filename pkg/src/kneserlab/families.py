"""Constructors for the named extremal families.

Distinguished elements sit at 1 and 2, intervals at [2, k+i+1], [3, l+2] and
[3, s+2].  Every constructor takes an optional ``perm`` that relabels the
ground set afterwards.
"""

from __future__ import annotations

import random
from typing import Callable

from .errors import BudgetError, DomainError
from .kneser import Family, is_intersecting
from .setkit import KSetLike, Params, as_mask, enumerate_all, lex_unrank, to_mask

RESAMPLE_BUDGET = 1000


def _interval(lo: int, hi: int) -> int:
    return to_mask(range(lo, hi + 1))


def _filtered(p: Params, keep: Callable[[int], bool], perm=None) -> Family:
    fam = Family(p, tuple(a for a in enumerate_all(p) if keep(a)))
    return fam.relabel(perm) if perm is not None else fam


def _element(x: int, p: Params) -> int:
    if not (1 <= x <= p.n):
        raise DomainError(f"element {x} outside [1..{p.n}]")
    return 1 << (x - 1)


def make_star(x: int, p: Params, perm=None) -> Family:
    bit = _element(x, p)
    return _filtered(p, lambda a: a & bit, perm)


def make_star_plus(x: int, t: KSetLike, p: Params, perm=None) -> Family:
    """The star at ``x`` plus one extra set ``t`` avoiding ``x``."""
    bit = _element(x, p)
    t = as_mask(t, p.n, p.k)
    if t & bit:
        raise DomainError("the added set must not contain x")
    return _filtered(p, lambda a: a & bit or a == t, perm)


def make_hilton_milner(x: int, f0: KSetLike, p: Params, perm=None) -> Family:
    bit = _element(x, p)
    f0 = as_mask(f0, p.n, p.k)
    if f0 & bit:
        raise DomainError("f0 must not contain x")
    return _filtered(p, lambda a: a == f0 or (a & bit and a & f0), perm)


def make_D(x: int, f0: KSetLike, fprime: KSetLike, p: Params, perm=None) -> Family:
    """Hilton-Milner family plus one set through ``x`` disjoint from ``f0``: one edge."""
    bit = _element(x, p)
    f0 = as_mask(f0, p.n, p.k)
    fprime = as_mask(fprime, p.n, p.k)
    if f0 & bit:
        raise DomainError("f0 must not contain x")
    if not fprime & bit:
        raise DomainError("fprime must contain x")
    if fprime & f0:
        raise DomainError("fprime must be disjoint from f0")
    return _filtered(p, lambda a: a in (f0, fprime) or (a & bit and a & f0), perm)


def default_D(p: Params, perm=None) -> Family:
    """D with x = 1, F = [2, k+1], F' = {1} u [k+2, 2k]."""
    p.require_disjoint_pairs()
    return make_D(1, range(2, p.k + 2), [1, *range(p.k + 2, 2 * p.k + 1)], p, perm)


def make_E(i: int, p: Params, perm=None) -> Family:
    n, k = p.n, p.k
    if i < 1 or k + i + 1 > n:
        raise DomainError(f"E_i needs 1 <= i and k+i+1 <= n, got i={i}, n={n}, k={k}")
    block = _interval(2, k + i + 1)
    return _filtered(p, lambda a: (a & 1 and a & block) or a & ~block == 0, perm)


def make_W(l: int, p: Params, perm=None) -> Family:
    if l < 1 or l + 2 > p.n:
        raise DomainError(f"W_l needs 1 <= l <= n-2, got l={l}, n={p.n}")
    pair = 0b11
    block = _interval(3, l + 2)

    def keep(a):
        through = (a & pair).bit_count()
        return through == 2 or (through == 1 and a & block)

    return _filtered(p, keep, perm)


def make_W_prime(l: int, lp: int, p: Params, perm=None) -> Family:
    """All k-sets meeting [3, l+2] in at least ``lp`` elements."""
    if l < 1 or l + 2 > p.n:
        raise DomainError(f"W'_l' needs 1 <= l <= n-2, got l={l}, n={p.n}")
    if not (1 <= lp <= min(l, p.k)):
        raise DomainError(f"need 1 <= l' <= min(l, k), got l'={lp}")
    block = _interval(3, l + 2)
    return _filtered(p, lambda a: (a & block).bit_count() >= lp, perm)


def make_tightness_G(s: int, p: Params, perm=None) -> Family:
    """Sets through {1,2}, plus sets meeting {1,2} once and [3, s+2] once."""
    n, k = p.n, p.k
    if k < 2 or s < 2 or s + 2 > n or n - s - 2 < k - 2:
        raise DomainError(f"G_s needs k >= 2, s >= 2, s+2 <= n, n-s-2 >= k-2; got n={n}, k={k}, s={s}")
    pair = 0b11
    block = _interval(3, s + 2)

    def keep(a):
        through = (a & pair).bit_count()
        return through == 2 or (through == 1 and (a & block).bit_count() == 1)

    return _filtered(p, keep, perm)


def make_random(m: int, p: Params, seed: int, require_non_intersecting: bool = False,
                max_tries: int = RESAMPLE_BUDGET) -> Family:
    """Uniform m-subset of all k-sets, drawn as ranks with ``random.Random(seed).sample``.

    With ``require_non_intersecting`` the draw is repeated from the same stream
    until the family has a disjoint pair.
    """
    if not (0 <= m <= p.total):
        raise DomainError(f"m={m} outside [0, C({p.n},{p.k})]")
    if require_non_intersecting and (m < 2 or p.n < 2 * p.k):
        raise DomainError("a non-intersecting family needs m >= 2 and n >= 2k")
    rng = random.Random(seed)
    for _ in range(max_tries):
        ranks = rng.sample(range(p.total), m)
        fam = Family(p, tuple(lex_unrank(r, p) for r in ranks))
        if not require_non_intersecting or not is_intersecting(fam):
            return fam
    raise BudgetError(f"no non-intersecting sample of size {m} in {max_tries} draws")
